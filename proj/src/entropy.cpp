#include "schedsim/entropy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace schedsim {

void InnerSolverParams::validate() const {
  if (!(step0 > 0.0) || !(grad_tol > 0.0) || max_iter <= 0)
    throw std::invalid_argument("inner solver: parameters must be positive");
  if (!(backtrack > 0.0 && backtrack < 1.0))
    throw std::invalid_argument("inner solver: backtrack must lie in (0, 1)");
}

void EntropyParams::validate() const {
  if (!(p0 > 0.0)) throw std::invalid_argument("entropy: p0 must be positive");
  if (!(escalation > 1.0)) throw std::invalid_argument("entropy: r must exceed 1");
  if (!(p_cap >= p0)) throw std::invalid_argument("entropy: cap below p0");
  if (!(eps > 0.0)) throw std::invalid_argument("entropy: eps must be positive");
  if (max_outer <= 0) throw std::invalid_argument("entropy: max_outer must be positive");
  inner.validate();
}

SmoothWeights SmoothWeights::uniform(int m) {
  SmoothWeights w;
  w.mu = VectorXd::Constant(m, 1.0 / m);
  return w;
}

void SmoothWeights::validate() const {
  if (mu.size() < 1 || (mu.array() <= 0.0).any())
    throw std::invalid_argument("weights: entries must be positive");
  if (std::abs(mu.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("weights: must sum to 1");
}

VectorXd RowProblem::costs(const VectorXd& a) const {
  const int m = dims();
  VectorXd f(m);
  for (int j = 0; j < m; ++j)
    f(j) = slice_cost(a(j), mu_avail(j), lambda, delay(j), task_bits, bandwidth(j));
  return f;
}

VectorXd RowProblem::cost_gradient(const VectorXd& a) const {
  const int m = dims();
  VectorXd g(m);
  for (int j = 0; j < m; ++j)
    g(j) = slice_cost_gradient(a(j), mu_avail(j), lambda, task_bits, bandwidth(j));
  return g;
}

double RowProblem::max_cost(const VectorXd& a) const { return costs(a).maxCoeff(); }

double RowProblem::sum_cost(const VectorXd& a) const { return costs(a).sum(); }

VectorXd RowProblem::caps() const {
  const int m = dims();
  VectorXd u = VectorXd::Ones(m);
  if (lambda > 0.0) {
    for (int j = 0; j < m; ++j)
      u(j) = std::min(1.0, (1.0 - kStabilityMargin) * mu_avail(j) / lambda);
  }
  return u;
}

RowProblem make_row_problem(const SystemState& state, const Allocation& alloc,
                            int scheduler) {
  RowProblem prob;
  prob.mu_avail = available_capacity(state, alloc, scheduler);
  prob.lambda = state.lambda(scheduler);
  prob.delay = state.cluster.delay.row(scheduler).transpose();
  prob.bandwidth = state.cluster.bandwidth.row(scheduler).transpose();
  prob.task_bits = state.workload.task_bits;
  return prob;
}

double entropy_value(const VectorXd& f, const SmoothWeights& w, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("entropy_value: p must be positive");
  w.validate();
  const double shift = f.maxCoeff();
  const double s = (w.mu.array() * (p * (f.array() - shift)).exp()).sum();
  return shift + std::log(s) / p;
}

VectorXd softmax_weights(const VectorXd& f, const SmoothWeights& w, double p) {
  const double shift = f.maxCoeff();
  // Floor keeps far-from-max weights positive despite exp underflow.
  VectorXd e = (w.mu.array() * (p * (f.array() - shift)).exp())
                   .max(std::numeric_limits<double>::min());
  return e / e.sum();
}

VectorXd entropy_gradient(const RowProblem& prob, const VectorXd& a,
                          const SmoothWeights& w, double p) {
  const VectorXd f = prob.costs(a);
  const VectorXd sw = softmax_weights(f, w, p);
  return sw.cwiseProduct(prob.cost_gradient(a));
}

SmoothWeights update_weights(const SmoothWeights& w, const VectorXd& f, double p) {
  SmoothWeights out;
  out.mu = softmax_weights(f, w, p);
  return out;
}

VectorXd project_capped_simplex(const VectorXd& v, const VectorXd& caps) {
  const int m = static_cast<int>(v.size());
  if (caps.size() != m || (caps.array() < 0.0).any())
    throw std::invalid_argument("projection: bad caps");
  if (caps.sum() < 1.0 - 1e-12)
    throw std::invalid_argument("projection: caps cannot reach the simplex");

  auto mass = [&](double theta) {
    return (v.array() - theta).cwiseMax(0.0).cwiseMin(caps.array()).sum();
  };
  double lo = (v - caps).minCoeff();  // mass(lo) = sum(caps) > 1
  double hi = v.maxCoeff();           // mass(hi) = 0
  for (int it = 0; it < 200 && hi - lo > 1e-16 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass(mid) >= 1.0 ? lo : hi) = mid;
  }
  const double theta = 0.5 * (lo + hi);
  return (v.array() - theta).cwiseMax(0.0).cwiseMin(caps.array());
}

VectorXd minimize_projected(const std::function<double(const VectorXd&)>& value,
                            const std::function<VectorXd(const VectorXd&)>& grad,
                            const VectorXd& start, const VectorXd& caps,
                            const InnerSolverParams& params) {
  params.validate();
  VectorXd x = project_capped_simplex(start, caps);
  if (x.size() == 1) return x;

  double t = params.step0;
  for (int it = 0; it < params.max_iter; ++it) {
    const VectorXd g = grad(x);
    if ((x - project_capped_simplex(x - g, caps)).norm() < params.grad_tol) break;

    const double fx = value(x);
    VectorXd xn = x;
    while (true) {
      xn = project_capped_simplex(x - t * g, caps);
      const VectorXd dx = xn - x;
      if (dx.norm() == 0.0) break;
      if (value(xn) <= fx + 1e-4 * g.dot(dx)) break;
      t *= params.backtrack;
      if (t < 1e-18) { xn = x; break; }
    }
    if ((xn - x).norm() == 0.0) break;  // stalled at machine precision
    x = xn;
    t = std::min(t / params.backtrack, 1e3);
  }
  return x;
}

VectorXd minimize_smoothed(const RowProblem& prob, const VectorXd& a_start,
                           const SmoothWeights& w, double p,
                           const InnerSolverParams& params) {
  auto value = [&](const VectorXd& a) { return entropy_value(prob.costs(a), w, p); };
  auto grad = [&](const VectorXd& a) { return entropy_gradient(prob, a, w, p); };
  return minimize_projected(value, grad, a_start, prob.caps(), params);
}

RowSolveResult solve_minimax_row(const RowProblem& prob, const VectorXd& a_start,
                                 const EntropyParams& params) {
  params.validate();
  const VectorXd caps = prob.caps();
  VectorXd x = project_capped_simplex(a_start, caps);

  RowSolveResult res;
  if (prob.dims() == 1) {
    res.a = x;
    return res;
  }

  SmoothWeights w = SmoothWeights::uniform(prob.dims());
  double p = params.p0;
  VectorXd best = x;
  double best_val = prob.max_cost(x);
  res.converged = false;

  for (int k = 0; k < params.max_outer; ++k) {
    const VectorXd xn = minimize_smoothed(prob, x, w, p, params.inner);
    const double val = prob.max_cost(xn);
    if (val < best_val) {
      best_val = val;
      best = xn;
    }
    res.outer_iters = k + 1;
    // A couple of escalations are forced before the movement test can fire,
    // otherwise a lazy first inner solve would end the loop at small p.
    if ((xn - x).norm() < params.eps && k >= 2) {
      res.converged = true;
      x = xn;
      break;
    }
    w = update_weights(w, prob.costs(xn), p);
    if (p < params.p_cap) p = std::min(p * params.escalation, params.p_cap);
    x = xn;
  }
  res.a = best;
  return res;
}

}  // namespace schedsim
