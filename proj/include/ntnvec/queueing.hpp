#pragma once

// M/M/c and M/D/c analytics for the platform server pool.

namespace ntnvec::queueing {

struct QueueSpec
{
  double lambda = 0.0; // arrival rate [tasks/s]
  double mu = 1.0;     // per-server service rate [tasks/s]
  int servers = 1;

  double offered() const { return lambda / mu; }
};

/// Probability that an arrival finds all servers busy.
///
/// Evaluated through the Erlang-B recurrence
///   B(0) = 1,  B(j) = G B(j-1) / (j + G B(j-1)),
///   C(c, G) = c B(c) / (c - G (1 - B(c))),
/// which stays finite where the factorial form overflows.
/// Throws DomainError for c < 1 or G < 0 and InstabilityError for G >= c.
double erlang_c(int servers, double offered);

/// Mean M/M/c queue length G/(c - G) * C(c, G).
double lq_mmc(int servers, double offered);

/// Mean M/M/c waiting time via Little's law; 0 when lambda == 0.
double wq_mmc(const QueueSpec& queue);

/// Mean M/D/c waiting time, approximated as half the M/M/c value.
double wq_mdc(const QueueSpec& queue);

struct VecProcessing
{
  double wait = 0.0;    // M/D/c queueing delay [s]
  double service = 0.0; // eta*C/C_i [s]

  double total() const { return wait + service; }
};

/// Queueing and service time for a fraction `eta` of `load` FLOP processed on
/// `servers` servers of `capacity` FLOP/s each, tasks arriving at `lambda`.
/// Zero for eta == 0.
VecProcessing vec_processing(double eta, double load, double capacity, int servers, double lambda);

double vec_processing_time(double eta, double load, double capacity, int servers, double lambda);

} // namespace ntnvec::queueing
