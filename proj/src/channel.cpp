#include "ntnvec/channel.hpp"

#include "ntnvec/errors.hpp"

#include <cmath>

namespace ntnvec::channel {

double eirp(double p_t, double l_c, double g_t)
{
  return p_t - l_c + g_t;
}

double g_over_t(double g_r, double n_f, double t0, double t_a)
{
  if (!(t0 > 0.0) || !(t_a > 0.0)) {
    throw DomainError("G/T: temperatures must be positive");
  }
  const double noise_temperature = t0 + (t_a - t0) * std::pow(10.0, -n_f / 10.0);
  if (!(noise_temperature > 0.0)) {
    throw DomainError("G/T: effective noise temperature is not positive");
  }
  return g_r - n_f - 10.0 * std::log10(noise_temperature);
}

double fspl(double fc_ghz, double distance_km)
{
  if (!(fc_ghz > 0.0) || !(distance_km > 0.0)) {
    throw DomainError("FSPL: frequency and distance must be positive");
  }
  return 92.45 + 20.0 * std::log10(fc_ghz) + 20.0 * std::log10(distance_km);
}

double total_path_loss(const LinkBudget& link, double distance_km)
{
  if (!(distance_km > 0.0)) {
    throw DomainError("path loss: distance must be positive");
  }
  if (link.path_loss_mode == PathLossMode::override) {
    if (!link.pl_override) {
      throw ValidationError("pl_override", "required when path_loss_mode is override");
    }
    return *link.pl_override;
  }
  return fspl(link.fc, distance_km) + link.pl_g + link.pl_s;
}

double snr_db(double eirp_dbw, double g_over_t_dbk, double path_loss_db, double bandwidth_hz)
{
  if (!(bandwidth_hz > 0.0)) {
    throw DomainError("SNR: bandwidth must be positive");
  }
  return eirp_dbw + g_over_t_dbk - path_loss_db - constants::boltzmann_db - 10.0 * std::log10(bandwidth_hz);
}

double shannon_capacity(double bandwidth_hz, double snr)
{
  if (!(bandwidth_hz > 0.0)) {
    throw DomainError("capacity: bandwidth must be positive");
  }
  // log1p keeps the result strictly positive for very low SNR.
  return bandwidth_hz * std::log1p(std::pow(10.0, snr / 10.0)) / std::log(2.0);
}

double resolve_eirp(const RadioEndpoint& endpoint)
{
  if (endpoint.eirp) {
    return *endpoint.eirp;
  }
  if (endpoint.p_t && endpoint.l_c && endpoint.g_t) {
    return eirp(*endpoint.p_t, *endpoint.l_c, *endpoint.g_t);
  }
  throw ValidationError("eirp", "endpoint has neither eirp nor p_t/l_c/g_t");
}

double resolve_g_over_t(const RadioEndpoint& endpoint)
{
  if (endpoint.g_over_t) {
    return *endpoint.g_over_t;
  }
  if (endpoint.g_r && endpoint.n_f && endpoint.t0 && endpoint.t_a) {
    return g_over_t(*endpoint.g_r, *endpoint.n_f, *endpoint.t0, *endpoint.t_a);
  }
  throw ValidationError("g_over_t", "endpoint has neither g_over_t nor g_r/n_f/t0/t_a");
}

LinkCapacity evaluate_link(const LinkBudget& link, Direction direction, double distance_km)
{
  LinkCapacity out;
  out.direction = direction;
  out.eirp = resolve_eirp(link.tx);
  out.g_over_t = resolve_g_over_t(link.rx);
  out.pl_used = total_path_loss(link, distance_km);
  out.snr_db = snr_db(out.eirp, out.g_over_t, out.pl_used, link.bandwidth);
  out.rate = shannon_capacity(link.bandwidth, out.snr_db);
  return out;
}

} // namespace ntnvec::channel
