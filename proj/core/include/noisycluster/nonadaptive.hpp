#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "noisycluster/config.hpp"
#include "noisycluster/oracle.hpp"
#include "noisycluster/run_result.hpp"

namespace noisycluster {

enum class NonadaptiveMode { efficient, info_optimal };

// The full up-front query set: a seeded uniform vertex sample, every pair
// inside it, then sample x rest. A pure function of (n, seed, parameters) —
// no oracle answer can influence it, which is what makes the algorithms
// non-adaptive. Pairs are listed in issue order.
struct QueryPlan {
  std::vector<int> sample;  // ascending
  std::vector<std::pair<int, int>> pairs;
};

// k = 2: sample alpha * 4 * 16/(1-2p)^4 * ln n vertices.
QueryPlan nonadaptive_k2_plan(int n, double p, double alpha, std::uint64_t seed);

// General k with max/min cluster-size ratio R: the efficient flavor samples
// alpha * 64 R k^2 ln n/(1-2p)^4 vertices, the info-optimal flavor
// alpha * 96 R k ln n/(1-2p)^2. A sample reaching n degenerates to full
// querying.
QueryPlan nonadaptive_general_plan(int n, int k, double ratio, double p,
                                   NonadaptiveMode mode, double alpha,
                                   std::uint64_t seed);

// Recovers one majority subcluster (size >= half the sample) from the sample
// graph, grows it by majority over the pre-issued cross answers, and puts all
// other vertices in a second cluster.
RunResult run_nonadaptive_k2(Oracle& o, int n, double p, const AlgoConfig& cfg);

// General k: subclusters come from the batch clustering (efficient) or from
// repeated heaviest-subgraph extraction (info_optimal, sample capped by the
// solver), then grow by majority over pre-issued answers. Unassigned
// vertices stay as unclustered singletons.
RunResult run_nonadaptive_general(Oracle& o, int n, int k, double ratio, double p,
                                  NonadaptiveMode mode, const AlgoConfig& cfg);

}  // namespace noisycluster
