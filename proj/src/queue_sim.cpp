#include "schedsim/queue_sim.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "schedsim/model.hpp"

namespace schedsim {

void SimSpec::validate() const {
  if (!(lambda > 0.0) || !(mu > 0.0))
    throw std::invalid_argument("sim: rates must be positive");
  if (lambda >= mu) throw std::domain_error("sim: unstable queue (lambda >= mu)");
  const long long w = warmup < 0 ? jobs / 10 : warmup;
  if (jobs <= w) throw std::invalid_argument("sim: need more jobs than warmup");
}

double analytic_mean_time(const SimSpec& spec) {
  const double sigma2 =
      spec.kind == ServiceKind::exponential ? 1.0 / (spec.mu * spec.mu) : 0.0;
  return mg1_mean_time(spec.lambda, spec.mu, sigma2);
}

SimResult simulate_queue(const SimSpec& spec) {
  spec.validate();
  const long long warmup = spec.warmup < 0 ? spec.jobs / 10 : spec.warmup;

  std::mt19937_64 rng(spec.seed);
  std::exponential_distribution<double> interarrival(spec.lambda);
  std::exponential_distribution<double> exp_service(spec.mu);
  const double det_service = 1.0 / spec.mu;

  // Batch means: successive sojourn times are heavily correlated, so the
  // standard error comes from batch averages, not raw samples.
  const int n_batches = 100;
  const long long counted = spec.jobs - warmup;
  const long long batch_len = counted / n_batches;
  std::vector<double> batch(n_batches, 0.0);

  double wait = 0.0;  // queueing delay seen by the current job
  long long idx = 0;
  for (long long k = 0; k < spec.jobs; ++k) {
    const double service = spec.kind == ServiceKind::exponential
                               ? exp_service(rng)
                               : det_service;
    const double sojourn = wait + service;
    if (k >= warmup && idx < n_batches * batch_len) {
      batch[static_cast<std::size_t>(idx / batch_len)] += sojourn;
      ++idx;
    }
    wait = std::max(0.0, wait + service - interarrival(rng));
  }

  double mean = 0.0;
  for (double& b : batch) {
    b /= static_cast<double>(batch_len);
    mean += b;
  }
  mean /= n_batches;
  double var = 0.0;
  for (const double b : batch) var += (b - mean) * (b - mean);
  var /= (n_batches - 1);

  SimResult res;
  res.mean = mean;
  res.std_error = std::sqrt(var / n_batches);
  res.counted = idx;
  return res;
}

}  // namespace schedsim
