#pragma once

// Test-only reference: iterative restricted-growth-string successor plus
// from-scratch objectives. Deliberately independent of the library's
// recursive incremental solver so the two can check each other.

#include <functional>
#include <vector>

#include "noisycluster/weighted_graph.hpp"

namespace nc_test {

// Visits every set partition of m elements as a label vector.
inline void for_each_partition(int m,
                               const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(m), 0);
  for (;;) {
    visit(a);
    int i = m - 1;
    while (i > 0) {
      if (a[static_cast<std::size_t>(i)] <=
          prefix_max[static_cast<std::size_t>(i - 1)]) {
        break;
      }
      --i;
    }
    if (i == 0) return;
    ++a[static_cast<std::size_t>(i)];
    prefix_max[static_cast<std::size_t>(i)] =
        std::max(prefix_max[static_cast<std::size_t>(i - 1)],
                 a[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < m; ++j) {
      a[static_cast<std::size_t>(j)] = 0;
      prefix_max[static_cast<std::size_t>(j)] =
          prefix_max[static_cast<std::size_t>(j - 1)];
    }
  }
}

// Intra-cluster weight of a label vector, recomputed from scratch.
inline long long objective(const noisycluster::WeightedPairGraph::Dense& d,
                           const std::vector<int>& labels) {
  long long total = 0;
  for (int i = 0; i < d.m; ++i)
    for (int j = i + 1; j < d.m; ++j)
      if (labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)])
        total += d.at(i, j);
  return total;
}

// Correlation-clustering agreements of a label vector.
inline long long agreements(const noisycluster::WeightedPairGraph::Dense& d,
                            const std::vector<int>& labels) {
  long long total = 0;
  for (int i = 0; i < d.m; ++i)
    for (int j = i + 1; j < d.m; ++j) {
      const bool same =
          labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)];
      if ((same && d.at(i, j) > 0) || (!same && d.at(i, j) < 0)) ++total;
    }
  return total;
}

// Argmax of the intra-weight objective over all partitions, first maximizer
// in enumeration order.
inline std::vector<int> reference_ml_argmax(const noisycluster::WeightedPairGraph& g) {
  const auto d = g.dense();
  long long best = -1;
  std::vector<int> best_labels;
  for_each_partition(d.m, [&](const std::vector<int>& labels) {
    const long long value = objective(d, labels);
    if (value > best) {
      best = value;
      best_labels = labels;
    }
  });
  return best_labels;
}

}  // namespace nc_test
