#include "ntnvec/latency.hpp"

#include "ntnvec/errors.hpp"
#include "ntnvec/queueing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ntnvec::latency {

double local_processing_time(double eta, double load, double gv_capacity)
{
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("offloading factor must lie in [0, 1]");
  }
  if (!(gv_capacity > 0.0)) {
    throw DomainError("GV capacity must be positive");
  }
  return (1.0 - eta) * load / gv_capacity;
}

double avg_distance(double area, double altitude)
{
  if (!(area >= 0.0) || !(altitude >= 0.0)) {
    throw DomainError("area and altitude must be non-negative");
  }
  if (area == 0.0 && altitude == 0.0) {
    throw DomainError("degenerate geometry: zero area at zero altitude");
  }
  return std::sqrt(area / (2.0 * std::numbers::pi) + altitude * altitude);
}

double propagation_delay(double distance_km)
{
  if (!(distance_km >= 0.0)) {
    throw DomainError("distance must be non-negative");
  }
  return distance_km / constants::speed_of_light;
}

double transmission_delay(double density, double area, double bits, double rate)
{
  if (!(rate > 0.0)) {
    throw DomainError("link rate must be positive");
  }
  if (!(density >= 0.0) || !(area >= 0.0) || !(bits >= 0.0)) {
    throw DomainError("density, area and payload must be non-negative");
  }
  return density * area * bits / rate;
}

LatencyBreakdown vec_delay(double eta, const Scenario& scenario, const PlatformProfile& platform,
                           const channel::LinkCapacity& ul, const channel::LinkCapacity& dl)
{
  LatencyBreakdown out;
  out.t_prop = 2.0 * propagation_delay(avg_distance(scenario.area, platform.altitude));
  out.t_ul = transmission_delay(scenario.density, scenario.area, scenario.ul_bits, ul.rate);
  out.t_dl = transmission_delay(scenario.density, scenario.area, scenario.dl_bits, dl.rate);

  queueing::VecProcessing processing;
  try {
    processing = queueing::vec_processing(eta, scenario.load, platform.capacity, platform.servers,
                                          scenario.arrival_rate());
  } catch (const InstabilityError& e) {
    throw InstabilityError(e.offered(), e.servers(), std::string(to_string(platform.kind)));
  }
  out.t_queue_wait = processing.wait;
  out.t_service = processing.service;
  out.t_vec = out.t_prop + out.t_ul + out.t_dl + out.t_queue_wait + out.t_service;
  out.objective = out.t_vec;
  return out;
}

SystemModel::SystemModel(const Configuration& config)
    : scenario_(config.scenario), gv_(config.platform(PlatformKind::GV))
{
  for (PlatformKind kind : {PlatformKind::UAV, PlatformKind::HAP}) {
    auto links = config.links.find(kind);
    if (links == config.links.end()) {
      throw ValidationError("links." + std::string(to_string(kind)), "not configured");
    }
    OffloadPath path;
    path.platform = config.platform(kind);
    path.distance = avg_distance(scenario_.area, path.platform.altitude);
    path.ul = channel::evaluate_link(links->second.ul, Direction::UL, path.distance);
    path.dl = channel::evaluate_link(links->second.dl, Direction::DL, path.distance);
    paths_.emplace(kind, path);
  }
}

const OffloadPath& SystemModel::path(PlatformKind kind) const
{
  auto it = paths_.find(kind);
  if (it == paths_.end()) {
    throw DomainError("no offloading path for platform " + std::string(to_string(kind)));
  }
  return it->second;
}

double SystemModel::local_only_time() const
{
  return local_processing_time(0.0, scenario_.load, gv_.capacity);
}

LatencyBreakdown evaluate_standalone(double eta, const SystemModel& model, PlatformKind kind)
{
  const OffloadPath& path = model.path(kind);
  LatencyBreakdown out = vec_delay(eta, model.scenario(), path.platform, path.ul, path.dl);
  out.t_lp = local_processing_time(eta, model.scenario().load, model.gv().capacity);
  out.objective = std::max(out.t_lp, out.t_vec);
  return out;
}

double objective_standalone(double eta, const SystemModel& model, PlatformKind kind)
{
  return evaluate_standalone(eta, model, kind).objective;
}

HybridEvaluation evaluate_hybrid(double eta_uav, double eta_hap, const SystemModel& model)
{
  // Allow for rounding in eta_uav + (1 - eta_uav).
  if (!(eta_uav >= 0.0 && eta_hap >= 0.0 && eta_uav + eta_hap <= 1.0 + 1e-12)) {
    throw DomainError("hybrid offloading factors must be non-negative and sum to at most 1");
  }
  HybridEvaluation out;
  const OffloadPath& uav = model.path(PlatformKind::UAV);
  const OffloadPath& hap = model.path(PlatformKind::HAP);
  out.uav = vec_delay(eta_uav, model.scenario(), uav.platform, uav.ul, uav.dl);
  out.hap = vec_delay(eta_hap, model.scenario(), hap.platform, hap.ul, hap.dl);
  out.t_lp = local_processing_time(std::min(1.0, eta_uav + eta_hap), model.scenario().load, model.gv().capacity);
  out.uav.t_lp = out.t_lp;
  out.hap.t_lp = out.t_lp;

  out.objective = out.t_lp;
  if (eta_uav > 0.0) {
    out.objective = std::max(out.objective, out.uav.t_vec);
  }
  if (eta_hap > 0.0) {
    out.objective = std::max(out.objective, out.hap.t_vec);
  }
  out.uav.objective = out.objective;
  out.hap.objective = out.objective;
  return out;
}

double objective_hybrid(double eta_uav, double eta_hap, const SystemModel& model)
{
  return evaluate_hybrid(eta_uav, eta_hap, model).objective;
}

} // namespace ntnvec::latency
