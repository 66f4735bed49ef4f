#pragma once

#include <random>

#include "schedsim/model.hpp"

namespace schedsim::testutil {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng);
  }
  int index(int n) { return std::uniform_int_distribution<int>(0, n - 1)(eng); }
};

// Single-scheduler instance with m nodes and uniform or per-node links.
inline SystemState single_scheduler_state(const VectorXd& mu, double lambda,
                                          const VectorXd& delay,
                                          const VectorXd& bandwidth,
                                          double task_bits) {
  SystemState s;
  s.cluster.mu = mu;
  s.cluster.delay = delay.transpose();
  s.cluster.bandwidth = bandwidth.transpose();
  s.workload.phi = VectorXd::Ones(1);
  s.workload.rho = 0.5;
  s.workload.task_bits = task_bits;
  s.lambda = VectorXd::Constant(1, lambda);
  return s;
}

// The randomized instance family used for oracle comparisons: m = 2,
// mu in [0.2, 2], lambda below half the weaker node, delays in [0, 1] s,
// bandwidths in [1e4, 1e6] bits/s, 1 Mbit tasks.
inline SystemState random_m2_instance(Rng& rng) {
  VectorXd mu(2), delay(2), bw(2);
  mu << rng.uniform(0.2, 2.0), rng.uniform(0.2, 2.0);
  delay << rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0);
  bw << rng.uniform(1e4, 1e6), rng.uniform(1e4, 1e6);
  const double lambda = rng.uniform(1e-3, 0.5 * mu.minCoeff());
  return single_scheduler_state(mu, lambda, delay, bw, 1e6);
}

// Fully symmetric multi-scheduler system: every fixed point must be uniform.
inline SystemState symmetric_state(int n, int m, double mu_each = 1.0,
                                   double lambda_each = 0.1) {
  SystemState s;
  s.cluster.mu = VectorXd::Constant(m, mu_each);
  s.cluster.delay = MatrixXd::Constant(n, m, 0.5);
  s.cluster.bandwidth = MatrixXd::Constant(n, m, 1e5);
  s.workload.phi = VectorXd::Constant(n, 1.0 / n);
  s.workload.rho = 0.5;
  s.workload.task_bits = 1e6;
  s.lambda = VectorXd::Constant(n, lambda_each);
  return s;
}

}  // namespace schedsim::testutil
