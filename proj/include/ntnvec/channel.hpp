#pragma once

// Link budget chain: EIRP and G/T from their constituents, free-space and
// atmospheric path loss, SNR in the dB domain, Shannon capacity.

#include "ntnvec/scenario.hpp"

namespace ntnvec::channel {

struct LinkCapacity
{
  Direction direction = Direction::UL;
  double eirp = 0.0;     // dBW, transmitter side
  double g_over_t = 0.0; // dB/K, receiver side
  double pl_used = 0.0;  // dB
  double snr_db = 0.0;
  double rate = 0.0; // bit/s
};

/// P_T - L_C + G_T [dBW].
double eirp(double p_t, double l_c, double g_t);

/// G_R - N_f - 10 log10(T0 + (Ta - T0) 10^(-N_f/10)) [dB/K].
/// Throws DomainError if a temperature or the log argument is not positive.
double g_over_t(double g_r, double n_f, double t0, double t_a);

/// Free-space path loss with fc in GHz and d in km [dB].
double fspl(double fc_ghz, double distance_km);

double total_path_loss(const LinkBudget& link, double distance_km);

/// EIRP + G/T - PL - k - 10 log10(B), with k = -228.6 dBW/(K*Hz).
double snr_db(double eirp_dbw, double g_over_t_dbk, double path_loss_db, double bandwidth_hz);

/// B log2(1 + 10^(snr/10)) [bit/s].
double shannon_capacity(double bandwidth_hz, double snr_db);

/// Transmit-side EIRP from whichever form the endpoint carries.
double resolve_eirp(const RadioEndpoint& endpoint);
/// Receive-side G/T from whichever form the endpoint carries.
double resolve_g_over_t(const RadioEndpoint& endpoint);

LinkCapacity evaluate_link(const LinkBudget& link, Direction direction, double distance_km);

} // namespace ntnvec::channel
