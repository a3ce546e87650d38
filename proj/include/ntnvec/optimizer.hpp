#pragma once

// Offloading-factor search: standalone (one platform against local
// processing) and hybrid (UAV and HAP together).

#include "ntnvec/latency.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string_view>

namespace ntnvec::optimizer {

/// Relative backoff from the stability bound; t_vec diverges at the bound itself.
inline constexpr double kStabilityGuard = 1e-9;
inline constexpr int kMaxIterations = 200;
inline constexpr double kMinBracket = 1e-12;

enum class Binding
{
  crossing,
  local_only,
  stability_bound,
  unit_bound
};

std::string_view to_string(Binding binding);
std::optional<Binding> parse_binding(std::string_view text);

struct OffloadSolution
{
  Scheme scheme = Scheme::LOCAL;
  double eta_uav = 0.0;
  double eta_hap = 0.0;
  double objective = 0.0; // s
  double t_lp = 0.0;      // s
  std::map<PlatformKind, latency::LatencyBreakdown> breakdowns;
  Binding binding = Binding::local_only;
  int iterations = 0;

  double eta(PlatformKind kind) const { return kind == PlatformKind::UAV ? eta_uav : eta_hap; }
  double eta_total() const { return eta_uav + eta_hap; }
};

// One evaluation of the delay model at a candidate offloading factor.
struct Probe
{
  PlatformKind platform = PlatformKind::UAV;
  double eta = 0.0;
  double offered = 0.0; // G at this eta
  int servers = 1;
  double t_lp = 0.0;
  double t_vec = 0.0;
};

using ProbeObserver = std::function<void(const Probe&)>;

/// Largest stable offloading factor c C_i / (C k A r), not clamped to 1.
double eta_max(int servers, double capacity, double load, double density, double area, double rate);

double eta_max(const latency::SystemModel& model, PlatformKind kind);

/// Upper end of the search interval: min(1, eta_max (1 - guard)).
double search_limit(const latency::SystemModel& model, PlatformKind kind);

OffloadSolution solve_local(const latency::SystemModel& model);

/// Bisection for t_lp(eta) = t_vec(eta) on [0, search_limit]. Stops when
/// |t_lp - t_vec| < xi t_vec or the bracket is narrower than kMinBracket.
/// `kind` must be UAV or HAP.
OffloadSolution solve_standalone(const latency::SystemModel& model, PlatformKind kind,
                                 const ProbeObserver& observer = {});

/// Two-step hybrid: standalone UAV first; then, if the HAP can beat that
/// time, both platforms are levelled to a common delay T (each absorbing the
/// largest share with t_vec <= T) and T is bisected until local processing of
/// the remainder matches it within xi.
OffloadSolution solve_hybrid(const latency::SystemModel& model, const ProbeObserver& observer = {});

OffloadSolution solve(const latency::SystemModel& model, Scheme scheme, const ProbeObserver& observer = {});

} // namespace ntnvec::optimizer
