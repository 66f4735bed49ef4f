#pragma once

#include "schedsim/model.hpp"

namespace schedsim {

/// Jain's index: (sum d)^2 / (n sum d^2); 1 iff all entries are equal.
double fairness_index(const VectorXd& d);

struct Summary {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

Summary summarize(const VectorXd& values);

struct FairnessReport {
  double fi = 0.0;
  VectorXd per_scheduler;
};

FairnessReport fairness_report(const VectorXd& per_scheduler_times);

}  // namespace schedsim
