#pragma once

#include <vector>

#include "noisycluster/config.hpp"
#include "noisycluster/oracle.hpp"
#include "noisycluster/run_result.hpp"
#include "noisycluster/weighted_graph.hpp"

namespace noisycluster {

// Parameters of the polynomial-time batch algorithm.
//
// batch_size and min_cluster_out carry the nominal constants scaled by
// alpha: batch N = alpha * 64 k^2 ln n / (1-2p)^4 and emitted-cluster floor
// M = alpha * 64 k ln n / (1-2p)^4. threshold_n is the N fed into the
// square-root term of T(.) and theta(.); it must satisfy the identity
// 8 * sqrt(threshold_n * ln n) / (1-2p)^2 == min_cluster_out — true of the
// unscaled constants — or the degree filter T rises above the signal of
// clusters at the emission floor once alpha shrinks.
struct EffParams {
  int batch_size = 0;
  double min_cluster_out = 0.0;
  double threshold_n = 0.0;
  int majority_l = 1;  // member count for Phase-3C majority growth

  static EffParams known_k(double n, int k, double p, double alpha);
  static EffParams from_min_cluster(double min_cluster_out, int batch_size,
                                    int majority_l, double n, double p);
};

// T(a) = p*a + (6/(1-2p)) * sqrt(N * ln n): candidate-degree filter.
double threshold_T(double a, double N, double n, double p);

// theta(a) = 2p(1-p)*a + 2*sqrt(N * ln n): symmetric-difference acceptance.
double threshold_theta(double a, double N, double n, double p);

// Size estimate from a +1 degree that counts v itself: (deg - p*m)/(1-2p).
double cluster_size_estimate(int pos_degree_incl_self, int sample_size, double p);

// Work counter for the cubic-runtime check: element-wise comparison steps
// spent on pairwise symmetric differences.
struct SymdiffStats {
  long long comparisons = 0;
};

// Clusters one fully queried batch: candidates are vertices whose +1 degree
// reaches T(|V'|); two candidates land in one group when their positive
// neighborhoods (u and v excluded from both) differ in at most theta(|V'|)
// places, closed transitively by single linkage. Only groups of size at
// least min_cluster_out are returned, ordered by smallest member.
std::vector<std::vector<int>> cluster_batch_by_symdiff(const WeightedPairGraph& g,
                                                       const EffParams& params,
                                                       double n, double p,
                                                       SymdiffStats* stats = nullptr);

RunResult run_efficient_known_k(Oracle& o, int n, int k, double p,
                                const AlgoConfig& cfg);

// Unknown k: doubles a guess l starting at 2; a round samples
// alpha * 64 l^2 ln n/(1-2p)^4 unassigned vertices uniformly, and runs the
// known-k batch step with k = l once the largest estimated cluster size
// passes alpha * 6 l ln n/(1-2p)^4. Once the sample would cover everything
// the whole remaining graph is taken as the batch.
RunResult run_efficient_unknown_k(Oracle& o, int n, double p,
                                  const AlgoConfig& cfg);

}  // namespace noisycluster
