#pragma once

#include <string>
#include <vector>

#include "schedsim/entropy.hpp"
#include "schedsim/model.hpp"

namespace schedsim {

enum class Algorithm { PS, BS, GS };

const char* to_string(Algorithm algo);

struct ScheduleResult {
  Allocation alloc;
  int cycles_used = 0;
  bool converged = false;
  std::vector<double> diff_history;  // Frobenius norm per sweep
};

/// Response-time scheduling: Gauss-Seidel sweeps where each scheduler
/// solves its minimax row against the current available capacities.
ScheduleResult schedule_ps(const SystemState& state,
                           const EntropyParams& params = {},
                           int max_cycle = 100, double eps = 1e-4);

/// Balanced scheduling: rows proportional to available capacity, iterated
/// to a fixed point.
ScheduleResult schedule_bs(const SystemState& state);

/// Completion-time scheduling: same sweep structure, each scheduler
/// minimizes the sum of its slice costs (slices executed sequentially).
ScheduleResult schedule_gs(const SystemState& state,
                           const InnerSolverParams& inner = {},
                           int max_cycle = 100, double eps = 1e-4);

struct SchedulerEval {
  double max_cost = 0.0;  // response time: slices in parallel
  double sum_cost = 0.0;  // completion time: slices in sequence
};

std::vector<SchedulerEval> evaluate(const SystemState& state,
                                    const Allocation& alloc);

/// The objective each algorithm optimizes: max cost for PS and BS,
/// summed cost for GS.
double objective_of(Algorithm algo, const SchedulerEval& eval);

}  // namespace schedsim
