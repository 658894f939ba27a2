#pragma once

#include <vector>

#include "noisycluster/clustering.hpp"
#include "noisycluster/weighted_graph.hpp"

namespace noisycluster {

inline constexpr int kDefaultMlCap = 12;        // Bell(12) = 4,213,597 states
inline constexpr int kDefaultSubgraphCap = 24;  // branch-and-bound default cap
inline constexpr int kSubgraphEnumCap = 20;     // plain subset enumeration cap

// Exact maximum-likelihood partition of a complete +-1 graph: the partition
// maximizing total intra-cluster weight, found by exhaustive enumeration of
// set partitions in restricted-growth-string order. Ties go to the first
// maximizer in enumeration order. The returned clustering is over local
// indices 0..m-1, where index i is the i-th vertex in ascending id order.
Clustering ml_partition_exact(const WeightedPairGraph& g, int cap = kDefaultMlCap);

// Maps a local-index clustering of g back to member sets of global ids.
std::vector<std::vector<int>> to_global_blocks(const WeightedPairGraph& g,
                                               const Clustering& local);

// Intra-cluster weight objective of a local-index partition (each unordered
// pair counted once).
long long intra_weight(const WeightedPairGraph& g, const Clustering& local);

// Correlation-clustering agreements: intra +1 pairs plus inter -1 pairs.
// For every partition, intra_weight + (number of -1 pairs) == agreements.
long long agreement_count(const WeightedPairGraph& g, const Clustering& local);

struct SubgraphResult {
  std::vector<int> members;  // global ids, ascending; never empty
  long long weight = 0;      // sum of internal pair weights
};

// Heaviest non-empty vertex subset by internal weight. Ties break toward the
// smallest set, then the lexicographically smallest sorted member list.
// Exact depth-first branch and bound; the optimistic completion bound adds,
// per remaining vertex, its signed weight to the chosen set plus half its +1
// degree into the remaining set.
SubgraphResult heaviest_subgraph(const WeightedPairGraph& g,
                                 int cap = kDefaultSubgraphCap);

// Plain subset enumeration; must agree with the branch and bound.
SubgraphResult heaviest_subgraph_enumerate(const WeightedPairGraph& g,
                                           int cap = kSubgraphEnumCap);

}  // namespace noisycluster
