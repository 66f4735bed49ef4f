#pragma once

#include <Eigen/Dense>
#include <vector>

namespace schedsim {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Relative margin keeping per-slice load strictly inside the stable region
// while the solvers iterate.
inline constexpr double kStabilityMargin = 1e-6;

/// Computing cluster: m nodes, each an M/G/1 server, reachable over links
/// with fixed delay and bandwidth per (scheduler, node) pair.
struct ClusterSpec {
  VectorXd mu;         // service rates mu_j, jobs/s
  MatrixXd delay;      // n x m, seconds
  MatrixXd bandwidth;  // n x m, bits/s

  int nodes() const { return static_cast<int>(mu.size()); }
  void validate() const;  // throws std::invalid_argument
};

/// Workload description: n schedulers with relative arrival rates phi_i,
/// a target system load rho and a mean task length in bits.
struct WorkloadSpec {
  VectorXd phi;
  double rho = 0.0;
  double task_bits = 0.0;

  int schedulers() const { return static_cast<int>(phi.size()); }
  void validate() const;
};

/// Row-stochastic slicing matrix: a(i, j) is the fraction of scheduler i's
/// tasks sent to node j.
struct Allocation {
  MatrixXd a;

  static Allocation uniform(int n, int m);
  void validate() const;
};

struct SystemState {
  ClusterSpec cluster;
  WorkloadSpec workload;
  VectorXd lambda;  // absolute arrival rates, jobs/s

  int schedulers() const { return workload.schedulers(); }
  int nodes() const { return cluster.nodes(); }

  // Derives lambda from the workload law and checks aggregate stability.
  static SystemState make(ClusterSpec cluster, WorkloadSpec workload);
};

/// lambda_i = phi_i * rho * sum_j mu_j
VectorXd arrival_rates(const WorkloadSpec& workload, const ClusterSpec& cluster);

/// Mean time in system for an M/G/1 queue with service-time variance sigma2.
double mg1_mean_time(double lambda, double mu, double sigma2);

/// Capacity of each node left over for scheduler i once every other
/// scheduler's offered load is subtracted.
VectorXd available_capacity(const SystemState& state, const Allocation& alloc,
                            int scheduler);

/// Slice completion time in the reduced form: queueing time against the
/// available capacity plus link delay and transfer time.
double slice_cost(double a, double mu_avail, double lambda, double delay,
                  double task_bits, double bandwidth);

/// Same quantity written against the raw node rate and the total offered
/// load on the node (all schedulers included). Kept as a second algebraic
/// route for cross-checking.
double slice_cost_unreduced(double a, double mu, double node_load, double delay,
                            double task_bits, double bandwidth);

/// d(slice_cost)/da; strictly positive on the feasible range.
double slice_cost_gradient(double a, double mu_avail, double lambda,
                           double task_bits, double bandwidth);

/// Response time of scheduler i: slices run in parallel, so the slowest
/// slice decides.
double response_time(const SystemState& state, const Allocation& alloc,
                     int scheduler);

struct StabilityReport {
  bool ok = true;
  bool aggregate_ok = true;           // sum lambda < sum mu
  std::vector<int> overloaded_nodes;  // nodes with offered load >= mu_j
};

StabilityReport check_stability(const SystemState& state,
                                const Allocation& alloc);

}  // namespace schedsim
