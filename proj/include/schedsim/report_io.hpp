#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "schedsim/experiments.hpp"

namespace schedsim {

/// One result line: (sweep point x algorithm x scheduler).
struct OutputRecord {
  std::string scenario;
  std::string sweep_parameter;  // empty for plain runs
  std::optional<double> sweep_value;
  std::string algorithm;
  int scheduler = 0;
  double objective_value = 0.0;
  double response_time = 0.0;
  double fairness_index = 0.0;
  bool converged = false;
  int cycles_used = 0;
};

std::vector<OutputRecord> flatten(const RunReport& report,
                                  const std::string& sweep_parameter = "",
                                  std::optional<double> sweep_value = {});

std::vector<OutputRecord> flatten_sweep(const std::vector<RunReport>& reports,
                                        const SweepSpec& sweep);

void write_csv(std::ostream& os, const std::vector<OutputRecord>& records);
void write_jsonl(std::ostream& os, const std::vector<OutputRecord>& records);

/// True if any algorithm in the report failed outright (infeasible or
/// solver error), as opposed to merely not converging.
bool any_failed(const RunReport& report);
bool any_unconverged(const RunReport& report);

}  // namespace schedsim
