#pragma once

#include <span>

#include "noisycluster/config.hpp"
#include "noisycluster/oracle.hpp"
#include "noisycluster/run_result.hpp"

namespace noisycluster {

// ceil(alpha * 16/(1-2p)^2 * ln n), at least 1. `n` is real-valued so tests
// can pin ln n exactly.
int threshold_c(double p, double n, const AlgoConfig& cfg);

// Queries v against the l smallest-id members of the cluster; true iff
// strictly more than l/2 answers are +1 (ties reject: a wrong inclusion is
// unrecoverable, a rejection only defers v to the residual graph).
bool majority_member_test(Oracle& o, int v, std::span<const int> cluster, int l);

// The adaptive, information-theoretically optimal algorithm. Deterministic
// given the oracle: vertices are taken in ascending id, cluster seeds are
// extracted as heaviest subgraphs, grown by threshold sweeps and majority
// tests, and the leftover graph is finished with the exact ML partition.
RunResult run_info_optimal(Oracle& o, int n, double p, const AlgoConfig& cfg);

}  // namespace noisycluster
