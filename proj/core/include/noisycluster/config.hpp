#pragma once

#include "noisycluster/ml_exact.hpp"

namespace noisycluster {

// Desk-scale tuning surface. `alpha` multiplies the algorithms' nominal
// constants (c, c', N and their derivatives); those constants target
// asymptotic regimes and exceed practical n, so experiments scale them down
// and measure success empirically. Every logarithm in the library is natural.
struct AlgoConfig {
  double alpha = 1.0;

  // Exact-solver caps; exceeding them raises InstanceTooLarge.
  int ml_cap = kDefaultMlCap;
  int subgraph_cap = kDefaultSubgraphCap;

  // When the final residual graph exceeds ml_cap: fall back to singleton
  // clusters instead of throwing ResidualTooLarge.
  bool residual_singletons = false;

  // Run the exact ML estimate on the efficient algorithms' unclustered
  // residual when it fits under ml_cap (default: leave it as singletons).
  bool efficient_residual_ml = false;
};

}  // namespace noisycluster
