#include "ntnvec/optimizer.hpp"

#include "ntnvec/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ntnvec::optimizer {

namespace {

using latency::LatencyBreakdown;
using latency::SystemModel;

// Standalone delay model of one platform with probe instrumentation.
class Evaluator
{
public:
  Evaluator(const SystemModel& model, PlatformKind kind, const ProbeObserver& observer)
      : model_(model), kind_(kind), observer_(observer)
  {
  }

  LatencyBreakdown operator()(double eta)
  {
    ++evaluations_;
    try {
      const LatencyBreakdown out = latency::evaluate_standalone(eta, model_, kind_);
      notify(eta, out.t_lp, out.t_vec);
      return out;
    } catch (const InstabilityError&) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      notify(eta, nan, nan);
      throw;
    }
  }

  void notify(double eta, double t_lp, double t_vec) const
  {
    if (!observer_) {
      return;
    }
    const auto& platform = model_.path(kind_).platform;
    const double offered = eta == 0.0 ? 0.0 : model_.scenario().arrival_rate() / (platform.capacity / (eta * model_.scenario().load));
    observer_(Probe{kind_, eta, offered, platform.servers, t_lp, t_vec});
  }

  int evaluations() const { return evaluations_; }

private:
  const SystemModel& model_;
  PlatformKind kind_;
  const ProbeObserver& observer_;
  int evaluations_ = 0;
};

Binding edge_binding(const SystemModel& model, PlatformKind kind)
{
  return eta_max(model, kind) * (1.0 - kStabilityGuard) >= 1.0 ? Binding::unit_bound : Binding::stability_bound;
}

void check_offload_target(PlatformKind kind)
{
  if (kind == PlatformKind::GV) {
    throw DomainError("offloading target must be UAV or HAP");
  }
}

// Largest share a platform can take while keeping t_vec <= level. The inner
// bisection keeps its lower end feasible, so t_vec(result) <= level holds.
class Absorber
{
public:
  Absorber(const SystemModel& model, PlatformKind kind, const ProbeObserver& observer)
      : eval_(model, kind, observer), limit_(search_limit(model, kind))
  {
    overhead_ = eval_(0.0).t_vec;
    at_limit_ = eval_(limit_).t_vec;
  }

  double operator()(double level)
  {
    if (overhead_ >= level) {
      return 0.0;
    }
    if (at_limit_ <= level) {
      return limit_;
    }
    double lo = 0.0;
    double hi = limit_;
    while (hi - lo >= kMinBracket) {
      const double mid = 0.5 * (lo + hi);
      if (eval_(mid).t_vec <= level) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  double limit() const { return limit_; }
  int evaluations() const { return eval_.evaluations(); }
  void notify(double eta, double t_lp, double t_vec) const { eval_.notify(eta, t_lp, t_vec); }

private:
  Evaluator eval_;
  double limit_;
  double overhead_ = 0.0;
  double at_limit_ = 0.0;
};

} // namespace

std::string_view to_string(Binding binding)
{
  switch (binding) {
  case Binding::crossing: return "crossing";
  case Binding::local_only: return "local_only";
  case Binding::stability_bound: return "stability_bound";
  case Binding::unit_bound: return "unit_bound";
  }
  return "?";
}

std::optional<Binding> parse_binding(std::string_view text)
{
  for (Binding b : {Binding::crossing, Binding::local_only, Binding::stability_bound, Binding::unit_bound}) {
    if (to_string(b) == text) {
      return b;
    }
  }
  return std::nullopt;
}

double eta_max(int servers, double capacity, double load, double density, double area, double rate)
{
  return (servers * capacity) / (load * density * area * rate);
}

double eta_max(const SystemModel& model, PlatformKind kind)
{
  check_offload_target(kind);
  const Scenario& s = model.scenario();
  const PlatformProfile& p = model.path(kind).platform;
  return eta_max(p.servers, p.capacity, s.load, s.density, s.area, s.frame_rate);
}

double search_limit(const SystemModel& model, PlatformKind kind)
{
  return std::min(1.0, eta_max(model, kind) * (1.0 - kStabilityGuard));
}

OffloadSolution solve_local(const SystemModel& model)
{
  OffloadSolution out;
  out.scheme = Scheme::LOCAL;
  out.t_lp = model.local_only_time();
  out.objective = out.t_lp;
  out.binding = Binding::local_only;
  return out;
}

OffloadSolution solve_standalone(const SystemModel& model, PlatformKind kind, const ProbeObserver& observer)
{
  check_offload_target(kind);
  Evaluator eval(model, kind, observer);
  const double xi = model.tolerance();
  const double limit = search_limit(model, kind);
  int iterations = 0;

  auto finish = [&](double eta, const LatencyBreakdown& at, Binding binding) {
    OffloadSolution out;
    out.scheme = kind == PlatformKind::UAV ? Scheme::SO_UAV : Scheme::SO_HAP;
    (kind == PlatformKind::UAV ? out.eta_uav : out.eta_hap) = eta;
    out.objective = at.objective;
    out.t_lp = at.t_lp;
    out.breakdowns[kind] = at;
    out.binding = binding;
    out.iterations = iterations;
    return out;
  };

  // Offloading cannot pay off if the fixed overhead alone exceeds local processing.
  const LatencyBreakdown start = eval(0.0);
  if (start.t_vec >= start.t_lp) {
    return finish(0.0, start, Binding::local_only);
  }
  const LatencyBreakdown end = eval(limit);
  if (end.t_vec < end.t_lp) {
    return finish(limit, end, edge_binding(model, kind));
  }

  double lo = 0.0;
  double hi = limit;
  LatencyBreakdown at_lo = start;
  LatencyBreakdown at_hi = end;
  for (iterations = 1; iterations <= kMaxIterations; ++iterations) {
    const double mid = 0.5 * (lo + hi);
    const LatencyBreakdown at = eval(mid);
    const double gap = at.t_lp - at.t_vec;
    if (std::abs(gap) < xi * at.t_vec) {
      return finish(mid, at, Binding::crossing);
    }
    if (gap > 0.0) {
      lo = mid;
      at_lo = at;
    } else {
      hi = mid;
      at_hi = at;
    }
    if (hi - lo < kMinBracket) {
      return at_lo.objective <= at_hi.objective ? finish(lo, at_lo, Binding::crossing)
                                                : finish(hi, at_hi, Binding::crossing);
    }
  }
  throw SolverError("standalone " + std::string(to_string(kind)) + " search did not converge in " +
                    std::to_string(kMaxIterations) + " iterations");
}

OffloadSolution solve_hybrid(const SystemModel& model, const ProbeObserver& observer)
{
  const OffloadSolution uav_alone = solve_standalone(model, PlatformKind::UAV, observer);
  const double xi = model.tolerance();
  int iterations = uav_alone.iterations;

  Absorber uav(model, PlatformKind::UAV, observer);
  Absorber hap(model, PlatformKind::HAP, observer);

  auto assemble = [&](double eta_uav, double eta_hap, Binding binding) {
    const latency::HybridEvaluation at = latency::evaluate_hybrid(eta_uav, eta_hap, model);
    uav.notify(eta_uav, at.t_lp, at.uav.t_vec);
    hap.notify(eta_hap, at.t_lp, at.hap.t_vec);
    OffloadSolution out;
    out.scheme = Scheme::HO;
    out.eta_uav = eta_uav;
    out.eta_hap = eta_hap;
    out.objective = at.objective;
    out.t_lp = at.t_lp;
    out.breakdowns[PlatformKind::UAV] = at.uav;
    out.breakdowns[PlatformKind::HAP] = at.hap;
    out.binding = binding;
    out.iterations = iterations;
    return out;
  };

  // Step 1 result stands when the HAP's fixed overhead alone exceeds it.
  const OffloadSolution step_one = assemble(uav_alone.eta_uav, 0.0, uav_alone.binding);
  const double hap_overhead = latency::evaluate_standalone(0.0, model, PlatformKind::HAP).t_vec;
  if (hap_overhead >= uav_alone.objective) {
    return step_one;
  }

  // Step 2: find the delay level T at which both platforms, each loaded up to
  // t_vec = T, leave a local remainder that also takes T.
  const double load = model.scenario().load;
  const double gv_capacity = model.gv().capacity;
  double lo = 0.0;
  double hi = model.local_only_time();
  double eta_uav = 0.0;
  double eta_hap = 0.0;
  bool converged = false;
  for (int outer = 1; outer <= kMaxIterations && !converged; ++outer) {
    const double level = 0.5 * (lo + hi);
    eta_uav = uav(level);
    eta_hap = hap(level);
    const double t_lp = latency::local_processing_time(std::min(1.0, eta_uav + eta_hap), load, gv_capacity);
    const double gap = t_lp - level;
    if (std::abs(gap) < xi * level) {
      converged = true;
    } else if (gap > 0.0) {
      lo = level;
    } else {
      hi = level;
    }
    if (!converged && hi - lo < kMinBracket * hi) {
      eta_uav = uav(hi);
      eta_hap = hap(hi);
      converged = true;
    }
  }
  iterations += uav.evaluations() + hap.evaluations();
  if (!converged) {
    throw SolverError("hybrid level search did not converge in " + std::to_string(kMaxIterations) + " iterations");
  }

  Binding binding = Binding::crossing;
  if (eta_uav + eta_hap > 1.0) {
    eta_hap = 1.0 - eta_uav;
    binding = Binding::unit_bound;
  } else if (eta_uav == 0.0 && eta_hap == 0.0) {
    binding = Binding::local_only;
  } else if (eta_uav == uav.limit() || eta_hap == hap.limit()) {
    binding = eta_uav == uav.limit() ? edge_binding(model, PlatformKind::UAV) : edge_binding(model, PlatformKind::HAP);
  }

  OffloadSolution levelled = assemble(eta_uav, eta_hap, binding);
  return levelled.objective <= step_one.objective ? levelled : step_one;
}

OffloadSolution solve(const SystemModel& model, Scheme scheme, const ProbeObserver& observer)
{
  switch (scheme) {
  case Scheme::LOCAL: return solve_local(model);
  case Scheme::SO_UAV: return solve_standalone(model, PlatformKind::UAV, observer);
  case Scheme::SO_HAP: return solve_standalone(model, PlatformKind::HAP, observer);
  case Scheme::HO: return solve_hybrid(model, observer);
  }
  throw DomainError("unknown scheme");
}

} // namespace ntnvec::optimizer
