#pragma once

#include "schedsim/model.hpp"

namespace schedsim {

/// Brute-force search controls for tiny single-scheduler instances.
struct GridSpec {
  double step = 1e-3;
  int max_dims = 3;

  void validate() const;
};

struct OracleResult {
  VectorXd a;
  double value = 0.0;
};

/// Exhaustive simplex-grid minimizer of the worst slice cost (n = 1,
/// m <= 3); golden-section refined for m = 2.
OracleResult oracle_minimax(const SystemState& state, const GridSpec& grid = {});

/// Same search over the summed slice cost.
OracleResult oracle_minsum(const SystemState& state, const GridSpec& grid = {});

}  // namespace schedsim
