#include "schedsim/model.hpp"

#include <cmath>
#include <stdexcept>

namespace schedsim {

void ClusterSpec::validate() const {
  if (mu.size() < 1) throw std::invalid_argument("cluster: need at least one node");
  if ((mu.array() <= 0.0).any())
    throw std::invalid_argument("cluster: service rates must be positive");
  if (delay.cols() != mu.size() || bandwidth.cols() != mu.size())
    throw std::invalid_argument("cluster: link matrices must have one column per node");
  if (delay.rows() != bandwidth.rows())
    throw std::invalid_argument("cluster: link matrices must agree on scheduler count");
  if ((delay.array() < 0.0).any())
    throw std::invalid_argument("cluster: delays must be nonnegative");
  if ((bandwidth.array() <= 0.0).any())
    throw std::invalid_argument("cluster: bandwidths must be positive");
}

void WorkloadSpec::validate() const {
  if (phi.size() < 1) throw std::invalid_argument("workload: need at least one scheduler");
  if ((phi.array() <= 0.0).any())
    throw std::invalid_argument("workload: relative rates must be positive");
  if (!(rho > 0.0 && rho < 1.0))
    throw std::invalid_argument("workload: rho must lie in (0, 1)");
  if (!(task_bits > 0.0))
    throw std::invalid_argument("workload: task length must be positive");
}

Allocation Allocation::uniform(int n, int m) {
  Allocation out;
  out.a = MatrixXd::Constant(n, m, 1.0 / m);
  return out;
}

void Allocation::validate() const {
  if ((a.array() < 0.0).any())
    throw std::invalid_argument("allocation: negative slicing ratio");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (std::abs(a.row(i).sum() - 1.0) > 1e-9)
      throw std::invalid_argument("allocation: row does not sum to 1");
  }
}

SystemState SystemState::make(ClusterSpec cluster, WorkloadSpec workload) {
  cluster.validate();
  workload.validate();
  if (cluster.delay.rows() != workload.schedulers())
    throw std::invalid_argument("state: link matrices must have one row per scheduler");
  SystemState out;
  out.lambda = arrival_rates(workload, cluster);
  out.cluster = std::move(cluster);
  out.workload = std::move(workload);
  if (out.lambda.sum() >= out.cluster.mu.sum())
    throw std::invalid_argument("state: total arrival rate exceeds total capacity");
  return out;
}

VectorXd arrival_rates(const WorkloadSpec& workload, const ClusterSpec& cluster) {
  workload.validate();
  cluster.validate();
  return workload.phi * (workload.rho * cluster.mu.sum());
}

double mg1_mean_time(double lambda, double mu, double sigma2) {
  if (!(mu > 0.0)) throw std::invalid_argument("mg1: mu must be positive");
  if (lambda < 0.0 || sigma2 < 0.0) throw std::invalid_argument("mg1: negative input");
  if (lambda >= mu) throw std::domain_error("mg1: unstable queue (lambda >= mu)");
  return 1.0 / mu + lambda * (sigma2 + 1.0 / (mu * mu)) / (2.0 * (1.0 - lambda / mu));
}

VectorXd available_capacity(const SystemState& state, const Allocation& alloc,
                            int scheduler) {
  const int n = state.schedulers();
  const int m = state.nodes();
  if (scheduler < 0 || scheduler >= n)
    throw std::out_of_range("available_capacity: bad scheduler index");
  VectorXd load_others = VectorXd::Zero(m);
  for (int k = 0; k < n; ++k) {
    if (k == scheduler) continue;
    load_others += state.lambda(k) * alloc.a.row(k).transpose();
  }
  VectorXd out = state.cluster.mu - load_others;
  if ((out.array() <= 0.0).any())
    throw std::domain_error("available_capacity: node saturated by other schedulers");
  return out;
}

double slice_cost(double a, double mu_avail, double lambda, double delay,
                  double task_bits, double bandwidth) {
  if (a < 0.0) throw std::invalid_argument("slice_cost: negative ratio");
  if (lambda * a >= mu_avail)
    throw std::domain_error("slice_cost: offered slice load exceeds available capacity");
  return a / (mu_avail - lambda * a) + delay + task_bits * a / bandwidth;
}

double slice_cost_unreduced(double a, double mu, double node_load, double delay,
                            double task_bits, double bandwidth) {
  if (a < 0.0) throw std::invalid_argument("slice_cost: negative ratio");
  if (node_load >= mu)
    throw std::domain_error("slice_cost: node load exceeds service rate");
  const double queue = 1.0 / mu + node_load / (mu * (mu - node_load));
  return queue * a + delay + task_bits * a / bandwidth;
}

double slice_cost_gradient(double a, double mu_avail, double lambda,
                           double task_bits, double bandwidth) {
  if (lambda * a >= mu_avail)
    throw std::domain_error("slice_cost_gradient: offered slice load exceeds capacity");
  const double d = mu_avail - lambda * a;
  return mu_avail / (d * d) + task_bits / bandwidth;
}

double response_time(const SystemState& state, const Allocation& alloc,
                     int scheduler) {
  const VectorXd mu_avail = available_capacity(state, alloc, scheduler);
  const int m = state.nodes();
  double worst = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < m; ++j) {
    const double c = slice_cost(alloc.a(scheduler, j), mu_avail(j),
                                state.lambda(scheduler),
                                state.cluster.delay(scheduler, j),
                                state.workload.task_bits,
                                state.cluster.bandwidth(scheduler, j));
    worst = std::max(worst, c);
  }
  return worst;
}

StabilityReport check_stability(const SystemState& state, const Allocation& alloc) {
  StabilityReport rep;
  rep.aggregate_ok = state.lambda.sum() < state.cluster.mu.sum();
  const VectorXd node_load = alloc.a.transpose() * state.lambda;
  for (int j = 0; j < state.nodes(); ++j) {
    if (node_load(j) >= state.cluster.mu(j)) rep.overloaded_nodes.push_back(j);
  }
  rep.ok = rep.aggregate_ok && rep.overloaded_nodes.empty();
  return rep;
}

}  // namespace schedsim
