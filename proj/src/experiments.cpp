#include "schedsim/experiments.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace schedsim {

void Scenario::validate() const {
  to_state();
  if (algorithms.empty())
    throw std::invalid_argument("scenario: need at least one algorithm");
  solver.validate();
  if (max_cycle <= 0 || !(eps > 0.0))
    throw std::invalid_argument("scenario: bad loop controls");
}

SystemState Scenario::to_state() const {
  const int n = static_cast<int>(phi.size());
  const int m = static_cast<int>(mu.size());
  ClusterSpec cluster;
  cluster.mu = mu;
  if (uniform_links) {
    cluster.delay = MatrixXd::Constant(n, m, delay_s);
    cluster.bandwidth = MatrixXd::Constant(n, m, bandwidth_bps);
  } else {
    cluster.delay = delay;
    cluster.bandwidth = bandwidth;
  }
  WorkloadSpec workload;
  workload.phi = phi;
  workload.rho = rho;
  workload.task_bits = task_bits;
  return SystemState::make(std::move(cluster), std::move(workload));
}

const char* to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::load: return "load";
    case SweepParameter::scheduler_count: return "scheduler_count";
    case SweepParameter::node_count: return "node_count";
    case SweepParameter::bandwidth: return "bandwidth";
  }
  return "?";
}

bool sweep_parameter_from_string(const std::string& s, SweepParameter& out) {
  if (s == "load") out = SweepParameter::load;
  else if (s == "scheduler_count") out = SweepParameter::scheduler_count;
  else if (s == "node_count") out = SweepParameter::node_count;
  else if (s == "bandwidth") out = SweepParameter::bandwidth;
  else return false;
  return true;
}

void SweepSpec::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep: empty value list");
  for (const double v : values) at(v).validate();
}

Scenario SweepSpec::at(double value) const {
  Scenario s = base;
  switch (parameter) {
    case SweepParameter::load:
      s.rho = value;
      break;
    case SweepParameter::scheduler_count: {
      const int n = static_cast<int>(value);
      if (n < 1 || n > base.phi.size())
        throw std::invalid_argument("sweep: scheduler count outside the base table");
      s.phi = base.phi.head(n);
      break;
    }
    case SweepParameter::node_count: {
      const int m = static_cast<int>(value);
      if (m < 1 || m > base.mu.size())
        throw std::invalid_argument("sweep: node count outside the base table");
      s.mu = base.mu.head(m);
      break;
    }
    case SweepParameter::bandwidth:
      s.bandwidth_bps = value * 1e3;  // values given in Kbps
      break;
  }
  if (!s.uniform_links)
    throw std::invalid_argument("sweep: only uniform-link scenarios can be swept");
  s.label = base.label + "/" + to_string(parameter) + "=" + std::to_string(value);
  return s;
}

namespace {

VectorXd make_phi_table1() {
  VectorXd phi(7);
  phi << 0.0035, 0.01, 0.01, 0.01, 0.01, 0.006, 0.005;
  return phi;
}

}  // namespace

const std::map<std::string, Scenario>& builtin_scenarios() {
  static const std::map<std::string, Scenario> scenarios = [] {
    std::map<std::string, Scenario> out;

    Scenario exp1;
    exp1.label = "exp1";
    exp1.phi = make_phi_table1();
    exp1.mu = VectorXd(8);
    exp1.mu << 0.28, 0.22, 0.19, 0.23, 0.20, 0.26, 0.22, 0.23;
    out["exp1"] = exp1;

    Scenario exp2 = exp1;
    exp2.label = "exp2";
    exp2.mu << 0.25, 0.26, 0.23, 0.24, 0.22, 0.25, 0.22, 0.23;
    out["exp2"] = exp2;

    // Scheduler-count sweep base: 10 nodes, up to 15 schedulers.
    Scenario size_sched;
    size_sched.label = "size_schedulers";
    size_sched.mu = VectorXd(10);
    size_sched.mu << 0.25, 0.26, 0.23, 0.23, 0.23, 0.21, 0.24, 0.24, 0.24, 0.22;
    size_sched.phi = VectorXd(15);
    size_sched.phi << 0.0035, 0.01, 0.01, 0.01, 0.01, 0.006, 0.005, 0.003, 0.003,
        0.003, 0.002, 0.002, 0.002, 0.0015, 0.0015;
    out["size_schedulers"] = size_sched;

    // Node-count sweep base: 7 schedulers, up to 15 nodes.
    Scenario size_node;
    size_node.label = "size_nodes";
    size_node.phi = make_phi_table1();
    size_node.mu = VectorXd(15);
    size_node.mu << 0.25, 0.26, 0.23, 0.23, 0.23, 0.21, 0.24, 0.24, 0.24, 0.22,
        0.22, 0.22, 0.22, 0.20, 0.20;
    out["size_nodes"] = size_node;

    return out;
  }();
  return scenarios;
}

RunReport run_scenario(const Scenario& s) {
  s.validate();
  const SystemState state = s.to_state();
  RunReport report;
  report.label = s.label;
  for (const Algorithm algo : s.algorithms) {
    AlgorithmReport ar;
    ar.algo = algo;
    try {
      switch (algo) {
        case Algorithm::PS:
          ar.sched = schedule_ps(state, s.solver, s.max_cycle, s.eps);
          break;
        case Algorithm::BS:
          ar.sched = schedule_bs(state);
          break;
        case Algorithm::GS:
          ar.sched = schedule_gs(state, s.solver.inner, s.max_cycle, s.eps);
          break;
      }
      ar.eval = evaluate(state, ar.sched.alloc);
      VectorXd d(state.schedulers());
      for (int i = 0; i < state.schedulers(); ++i) d(i) = ar.eval[i].max_cost;
      ar.fairness = fairness_index(d);
      ar.ok = true;
    } catch (const std::exception& ex) {
      ar.ok = false;
      ar.error = ex.what();
    }
    report.algorithms.push_back(std::move(ar));
  }
  return report;
}

std::vector<RunReport> run_sweep(const SweepSpec& sweep, int jobs) {
  sweep.validate();
  const int n_points = static_cast<int>(sweep.values.size());
  std::vector<RunReport> out(n_points);

  auto run_point = [&](int idx) {
    try {
      out[idx] = run_scenario(sweep.at(sweep.values[idx]));
    } catch (const std::exception& ex) {
      out[idx].label = sweep.base.label + "/" + to_string(sweep.parameter) +
                       "=" + std::to_string(sweep.values[idx]);
      AlgorithmReport ar;
      ar.ok = false;
      ar.error = ex.what();
      out[idx].algorithms.push_back(std::move(ar));
    }
  };

  if (jobs <= 1) {
    for (int i = 0; i < n_points; ++i) run_point(i);
    return out;
  }

  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int workers = std::min(jobs, n_points);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n_points; i = next.fetch_add(1))
        run_point(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace schedsim
