#include "schedsim/oracle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace schedsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct SingleRow {
  VectorXd mu;
  double lambda;
  VectorXd delay;
  VectorXd bandwidth;
  double task_bits;
  bool use_max;  // max cost vs summed cost

  double eval(const VectorXd& a) const {
    double worst = -kInf, total = 0.0;
    for (int j = 0; j < mu.size(); ++j) {
      if (a(j) < 0.0 || lambda * a(j) >= mu(j)) return kInf;
      const double c = a(j) / (mu(j) - lambda * a(j)) + delay(j) +
                       task_bits * a(j) / bandwidth(j);
      worst = std::max(worst, c);
      total += c;
    }
    return use_max ? worst : total;
  }
};

// Golden-section on the 1-D slice a = (t, 1-t); the objective is convex in t.
double golden_refine(const SingleRow& row, double lo, double hi) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  auto eval = [&](double t) {
    VectorXd a(2);
    a << t, 1.0 - t;
    return row.eval(a);
  };
  double c = hi - gr * (hi - lo);
  double d = lo + gr * (hi - lo);
  double fc = eval(c), fd = eval(d);
  while (hi - lo > 1e-9) {
    if (fc <= fd) {
      hi = d; d = c; fd = fc;
      c = hi - gr * (hi - lo);
      fc = eval(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + gr * (hi - lo);
      fd = eval(d);
    }
  }
  return 0.5 * (lo + hi);
}

OracleResult search(const SystemState& state, const GridSpec& grid, bool use_max) {
  grid.validate();
  if (state.schedulers() != 1)
    throw std::invalid_argument("oracle: single-scheduler instances only");
  const int m = state.nodes();
  if (m > grid.max_dims || m > 3)
    throw std::invalid_argument("oracle: too many nodes for exhaustive search");

  SingleRow row{state.cluster.mu, state.lambda(0),
                state.cluster.delay.row(0).transpose(),
                state.cluster.bandwidth.row(0).transpose(),
                state.workload.task_bits, use_max};

  OracleResult best;
  best.value = kInf;
  auto consider = [&](const VectorXd& a) {
    const double v = row.eval(a);
    if (v < best.value) {
      best.value = v;
      best.a = a;
    }
  };

  if (m == 1) {
    VectorXd a = VectorXd::Ones(1);
    consider(a);
    if (!std::isfinite(best.value))
      throw std::domain_error("oracle: instance is infeasible");
    return best;
  }

  const int steps = static_cast<int>(std::lround(1.0 / grid.step));
  if (m == 2) {
    VectorXd a(2);
    for (int k = 0; k <= steps; ++k) {
      const double t = static_cast<double>(k) / steps;
      a << t, 1.0 - t;
      consider(a);
    }
    if (!std::isfinite(best.value))
      throw std::domain_error("oracle: instance is infeasible");
    const double t0 = best.a(0);
    const double t = golden_refine(row, std::max(0.0, t0 - grid.step),
                                   std::min(1.0, t0 + grid.step));
    a << t, 1.0 - t;
    consider(a);
    return best;
  }

  VectorXd a(3);
  for (int k1 = 0; k1 <= steps; ++k1) {
    for (int k2 = 0; k2 + k1 <= steps; ++k2) {
      const double x = static_cast<double>(k1) / steps;
      const double y = static_cast<double>(k2) / steps;
      a << x, y, 1.0 - x - y;
      consider(a);
    }
  }
  if (!std::isfinite(best.value))
    throw std::domain_error("oracle: instance is infeasible");
  return best;
}

}  // namespace

void GridSpec::validate() const {
  if (!(step > 0.0 && step <= 0.01))
    throw std::invalid_argument("grid: step must lie in (0, 0.01]");
  if (max_dims < 1 || max_dims > 3)
    throw std::invalid_argument("grid: max_dims must lie in [1, 3]");
}

OracleResult oracle_minimax(const SystemState& state, const GridSpec& grid) {
  return search(state, grid, true);
}

OracleResult oracle_minsum(const SystemState& state, const GridSpec& grid) {
  return search(state, grid, false);
}

}  // namespace schedsim
