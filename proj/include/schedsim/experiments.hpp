#pragma once

#include <map>
#include <string>
#include <vector>

#include "schedsim/metrics.hpp"
#include "schedsim/model.hpp"
#include "schedsim/schedulers.hpp"

namespace schedsim {

/// One runnable configuration. Link parameters are kept as scalars when
/// uniform so size sweeps can rebuild the matrices at any (n, m).
struct Scenario {
  std::string label;
  VectorXd mu;   // per-node service rates
  VectorXd phi;  // per-scheduler relative rates
  double rho = 0.5;
  double task_bits = 1e6;
  bool uniform_links = true;
  double delay_s = 0.5;
  double bandwidth_bps = 1e5;
  MatrixXd delay;      // used when uniform_links is false
  MatrixXd bandwidth;  // idem
  std::vector<Algorithm> algorithms = {Algorithm::PS, Algorithm::BS,
                                       Algorithm::GS};
  EntropyParams solver;
  int max_cycle = 100;
  double eps = 1e-4;

  void validate() const;
  SystemState to_state() const;
};

enum class SweepParameter { load, scheduler_count, node_count, bandwidth };

const char* to_string(SweepParameter p);
bool sweep_parameter_from_string(const std::string& s, SweepParameter& out);

struct SweepSpec {
  Scenario base;  // size sweeps take prefixes of base.phi / base.mu
  SweepParameter parameter = SweepParameter::load;
  std::vector<double> values;

  void validate() const;
  Scenario at(double value) const;
};

struct AlgorithmReport {
  Algorithm algo = Algorithm::PS;
  bool ok = false;
  std::string error;
  ScheduleResult sched;
  std::vector<SchedulerEval> eval;
  double fairness = 0.0;
};

struct RunReport {
  std::string label;
  std::vector<AlgorithmReport> algorithms;
};

/// Paper-configured scenarios, keyed by name.
const std::map<std::string, Scenario>& builtin_scenarios();

/// Runs each requested algorithm; a failing algorithm is recorded without
/// aborting the rest.
RunReport run_scenario(const Scenario& s);

/// One report per sweep value, in order. jobs > 1 runs points in parallel.
std::vector<RunReport> run_sweep(const SweepSpec& sweep, int jobs = 1);

}  // namespace schedsim
