#pragma once

#include <cstdint>
#include <string>

namespace schedsim {

enum class ServiceKind { exponential, deterministic };

struct SimSpec {
  double lambda = 0.0;
  double mu = 0.0;
  ServiceKind kind = ServiceKind::exponential;
  long long jobs = 1'000'000;
  long long warmup = -1;  // negative: use 10% of jobs
  std::uint64_t seed = 1;

  void validate() const;
};

struct SimResult {
  double mean = 0.0;       // time in system, seconds
  double std_error = 0.0;  // batch-means standard error
  long long counted = 0;
  std::string rng = "mt19937_64";
};

/// Single-server FIFO queue with Poisson arrivals, driven by the Lindley
/// waiting-time recursion. Deterministic for a given seed.
SimResult simulate_queue(const SimSpec& spec);

/// Closed-form mean time in system for the spec's service distribution.
double analytic_mean_time(const SimSpec& spec);

}  // namespace schedsim
