#pragma once

// Capture-to-output delay model: local processing against VEC offloading
// (propagation + UL/DL transmission + platform queueing and service).

#include "ntnvec/channel.hpp"
#include "ntnvec/scenario.hpp"

#include <map>

namespace ntnvec::latency {

struct LatencyBreakdown
{
  double t_lp = 0.0;
  double t_prop = 0.0; // 2 * tau_p
  double t_ul = 0.0;
  double t_dl = 0.0;
  double t_queue_wait = 0.0;
  double t_service = 0.0;
  double t_vec = 0.0; // t_prop + t_ul + t_dl + t_queue_wait + t_service
  double objective = 0.0;

  /// Propagation plus transmission: the part of t_vec that does not depend on eta.
  double fixed_overhead() const { return t_prop + t_ul + t_dl; }
};

/// (1 - eta) C / C_GV.
double local_processing_time(double eta, double load, double gv_capacity);

/// Mean GV-to-platform distance sqrt(A / (2 pi) + h0^2) [km].
double avg_distance(double area, double altitude);

/// One-way propagation delay over `distance_km` [s].
double propagation_delay(double distance_km);

/// Aggregate payload of all k*A vehicles over a shared link, k A n / R [s].
double transmission_delay(double density, double area, double bits, double rate);

/// VEC-side terms for offloading `eta` to `platform`. t_lp is left at 0 and
/// objective equals t_vec. Instability errors name the platform.
LatencyBreakdown vec_delay(double eta, const Scenario& scenario, const PlatformProfile& platform,
                           const channel::LinkCapacity& ul, const channel::LinkCapacity& dl);

// A compute platform together with its evaluated UL/DL links.
struct OffloadPath
{
  PlatformProfile platform;
  double distance = 0.0; // km
  channel::LinkCapacity ul;
  channel::LinkCapacity dl;
};

// Configuration reduced to what the delay model needs, with link capacities
// evaluated once. Immutable after construction.
class SystemModel
{
public:
  explicit SystemModel(const Configuration& config);

  const Scenario& scenario() const { return scenario_; }
  const PlatformProfile& gv() const { return gv_; }
  const OffloadPath& path(PlatformKind kind) const;

  double tolerance() const { return scenario_.tolerance; }
  /// Fully local processing time C / C_GV.
  double local_only_time() const;

private:
  Scenario scenario_;
  PlatformProfile gv_;
  std::map<PlatformKind, OffloadPath> paths_;
};

/// Full breakdown at eta with t_lp filled in and objective = max(t_lp, t_vec).
LatencyBreakdown evaluate_standalone(double eta, const SystemModel& model, PlatformKind kind);

double objective_standalone(double eta, const SystemModel& model, PlatformKind kind);

struct HybridEvaluation
{
  LatencyBreakdown uav;
  LatencyBreakdown hap;
  double t_lp = 0.0;
  double objective = 0.0;
};

/// max[t_vec(eta_uav), t_vec(eta_hap), t_lp(eta_uav + eta_hap)], where a
/// platform's t_vec only enters when it receives a non-zero share.
HybridEvaluation evaluate_hybrid(double eta_uav, double eta_hap, const SystemModel& model);

double objective_hybrid(double eta_uav, double eta_hap, const SystemModel& model);

} // namespace ntnvec::latency
