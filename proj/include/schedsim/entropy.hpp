#pragma once

#include <functional>

#include "schedsim/model.hpp"

namespace schedsim {

struct InnerSolverParams {
  double step0 = 1e-2;
  double backtrack = 0.5;
  int max_iter = 500;
  double grad_tol = 1e-8;

  void validate() const;
};

struct EntropyParams {
  double p0 = 10.0;       // initial smoothing parameter
  double escalation = 10.0;  // growth factor r
  double p_cap = 1e6;     // ceiling P on the smoothing parameter
  double eps = 1e-4;      // outer stop on iterate movement
  int max_outer = 50;
  InnerSolverParams inner;

  void validate() const;
};

/// Positive weights on the cost components, kept normalized to 1.
struct SmoothWeights {
  VectorXd mu;

  static SmoothWeights uniform(int m);
  void validate() const;
};

/// One scheduler's slicing problem with every other scheduler frozen:
/// component j costs a_j / (mu_avail_j - lambda a_j) + delay_j + b a_j / c_j.
struct RowProblem {
  VectorXd mu_avail;
  double lambda = 0.0;
  VectorXd delay;
  VectorXd bandwidth;
  double task_bits = 0.0;

  int dims() const { return static_cast<int>(mu_avail.size()); }
  VectorXd costs(const VectorXd& a) const;
  VectorXd cost_gradient(const VectorXd& a) const;
  double max_cost(const VectorXd& a) const;
  double sum_cost(const VectorXd& a) const;
  // Per-node ratio bounds that keep each queue stable (and ratios <= 1).
  VectorXd caps() const;
};

RowProblem make_row_problem(const SystemState& state, const Allocation& alloc,
                            int scheduler);

/// Weighted log-sum-exp aggregate of the component costs, shift-stabilized.
double entropy_value(const VectorXd& f, const SmoothWeights& w, double p);

/// Softmax of p*f under weights w; the gradient weights of entropy_value.
VectorXd softmax_weights(const VectorXd& f, const SmoothWeights& w, double p);

VectorXd entropy_gradient(const RowProblem& prob, const VectorXd& a,
                          const SmoothWeights& w, double p);

/// Multiplicative weight update: w_j <- w_j exp(p f_j), renormalized.
SmoothWeights update_weights(const SmoothWeights& w, const VectorXd& f, double p);

/// Euclidean projection onto { x : 0 <= x_j <= caps_j, sum x = 1 }.
VectorXd project_capped_simplex(const VectorXd& v, const VectorXd& caps);

/// Projected gradient descent with backtracking over the capped simplex.
VectorXd minimize_projected(const std::function<double(const VectorXd&)>& value,
                            const std::function<VectorXd(const VectorXd&)>& grad,
                            const VectorXd& start, const VectorXd& caps,
                            const InnerSolverParams& params);

/// Minimizes the smoothed objective at fixed (w, p) from a_start.
VectorXd minimize_smoothed(const RowProblem& prob, const VectorXd& a_start,
                           const SmoothWeights& w, double p,
                           const InnerSolverParams& params);

struct RowSolveResult {
  VectorXd a;
  int outer_iters = 0;
  bool converged = true;
};

/// Full adjustable-entropy loop: minimize, update weights, escalate p up to
/// the cap, stop once the iterate settles. Never returns a row whose true
/// max cost is worse than the starting point's.
RowSolveResult solve_minimax_row(const RowProblem& prob, const VectorXd& a_start,
                                 const EntropyParams& params);

}  // namespace schedsim
