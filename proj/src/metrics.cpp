#include "schedsim/metrics.hpp"

#include <stdexcept>

namespace schedsim {

double fairness_index(const VectorXd& d) {
  if (d.size() == 0) throw std::invalid_argument("fairness_index: empty input");
  if ((d.array() <= 0.0).any())
    throw std::invalid_argument("fairness_index: entries must be positive");
  const double s = d.sum();
  return s * s / (static_cast<double>(d.size()) * d.squaredNorm());
}

Summary summarize(const VectorXd& values) {
  if (values.size() == 0) throw std::invalid_argument("summarize: empty input");
  return {values.minCoeff(), values.maxCoeff(), values.mean()};
}

FairnessReport fairness_report(const VectorXd& per_scheduler_times) {
  return {fairness_index(per_scheduler_times), per_scheduler_times};
}

}  // namespace schedsim
