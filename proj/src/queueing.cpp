#include "ntnvec/queueing.hpp"

#include "ntnvec/errors.hpp"

namespace ntnvec::queueing {

namespace {

void check_traffic(int servers, double offered)
{
  if (servers < 1) {
    throw DomainError("queue needs at least one server");
  }
  if (!(offered >= 0.0)) {
    throw DomainError("offered traffic must be non-negative");
  }
  if (offered >= servers) {
    throw InstabilityError(offered, servers);
  }
}

void check_queue(const QueueSpec& queue)
{
  if (!(queue.lambda >= 0.0)) {
    throw DomainError("arrival rate must be non-negative");
  }
  if (!(queue.mu > 0.0)) {
    throw DomainError("service rate must be positive");
  }
  check_traffic(queue.servers, queue.offered());
}

} // namespace

double erlang_c(int servers, double offered)
{
  check_traffic(servers, offered);
  if (offered == 0.0) {
    return 0.0;
  }
  double blocking = 1.0;
  for (int j = 1; j <= servers; ++j) {
    blocking = offered * blocking / (j + offered * blocking);
  }
  return servers * blocking / (servers - offered * (1.0 - blocking));
}

double lq_mmc(int servers, double offered)
{
  const double busy = erlang_c(servers, offered);
  return offered / (servers - offered) * busy;
}

double wq_mmc(const QueueSpec& queue)
{
  check_queue(queue);
  if (queue.lambda == 0.0) {
    return 0.0;
  }
  return lq_mmc(queue.servers, queue.offered()) / queue.lambda;
}

double wq_mdc(const QueueSpec& queue)
{
  return 0.5 * wq_mmc(queue);
}

VecProcessing vec_processing(double eta, double load, double capacity, int servers, double lambda)
{
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw DomainError("offloading factor must lie in [0, 1]");
  }
  if (!(load > 0.0) || !(capacity > 0.0)) {
    throw DomainError("load and capacity must be positive");
  }
  if (eta == 0.0) {
    return {};
  }
  const QueueSpec queue{lambda, capacity / (eta * load), servers};
  return {wq_mdc(queue), eta * load / capacity};
}

double vec_processing_time(double eta, double load, double capacity, int servers, double lambda)
{
  return vec_processing(eta, load, capacity, servers, lambda).total();
}

} // namespace ntnvec::queueing
