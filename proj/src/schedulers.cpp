#include "schedsim/schedulers.hpp"

#include <stdexcept>

namespace schedsim {

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::PS: return "PS";
    case Algorithm::BS: return "BS";
    case Algorithm::GS: return "GS";
  }
  return "?";
}

namespace {

void require_stable(const SystemState& state) {
  const Allocation uni = Allocation::uniform(state.schedulers(), state.nodes());
  if (!check_stability(state, uni).aggregate_ok)
    throw std::domain_error("scheduler: aggregate arrival rate exceeds capacity");
}

// Shared Gauss-Seidel skeleton: row_solver updates row i in place against
// the current joint allocation.
template <typename RowSolver>
ScheduleResult sweep_loop(const SystemState& state, int max_cycle, double eps,
                          RowSolver&& row_solver) {
  const int n = state.schedulers();
  const int m = state.nodes();
  ScheduleResult res;
  res.alloc = Allocation::uniform(n, m);

  for (int cycle = 0; cycle < max_cycle; ++cycle) {
    const MatrixXd before = res.alloc.a;
    for (int i = 0; i < n; ++i) {
      res.alloc.a.row(i) = row_solver(res.alloc, i).transpose();
    }
    const double diff = (res.alloc.a - before).norm();
    res.diff_history.push_back(diff);
    res.cycles_used = cycle + 1;
    if (diff < eps) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace

ScheduleResult schedule_ps(const SystemState& state, const EntropyParams& params,
                           int max_cycle, double eps) {
  require_stable(state);
  params.validate();
  return sweep_loop(state, max_cycle, eps, [&](const Allocation& alloc, int i) {
    const RowProblem prob = make_row_problem(state, alloc, i);
    return solve_minimax_row(prob, alloc.a.row(i).transpose(), params).a;
  });
}

ScheduleResult schedule_bs(const SystemState& state) {
  require_stable(state);
  return sweep_loop(state, 1000, 1e-10, [&](const Allocation& alloc, int i) {
    const VectorXd mu_avail = available_capacity(state, alloc, i);
    return VectorXd(mu_avail / mu_avail.sum());
  });
}

ScheduleResult schedule_gs(const SystemState& state, const InnerSolverParams& inner,
                           int max_cycle, double eps) {
  require_stable(state);
  inner.validate();
  return sweep_loop(state, max_cycle, eps, [&](const Allocation& alloc, int i) {
    const RowProblem prob = make_row_problem(state, alloc, i);
    auto value = [&](const VectorXd& a) { return prob.sum_cost(a); };
    auto grad = [&](const VectorXd& a) { return prob.cost_gradient(a); };
    return minimize_projected(value, grad, alloc.a.row(i).transpose(),
                              prob.caps(), inner);
  });
}

std::vector<SchedulerEval> evaluate(const SystemState& state,
                                    const Allocation& alloc) {
  alloc.validate();
  const int n = state.schedulers();
  std::vector<SchedulerEval> out(n);
  for (int i = 0; i < n; ++i) {
    const RowProblem prob = make_row_problem(state, alloc, i);
    const VectorXd f = prob.costs(alloc.a.row(i).transpose());
    out[i].max_cost = f.maxCoeff();
    out[i].sum_cost = f.sum();
  }
  return out;
}

double objective_of(Algorithm algo, const SchedulerEval& eval) {
  return algo == Algorithm::GS ? eval.sum_cost : eval.max_cost;
}

}  // namespace schedsim
