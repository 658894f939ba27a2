#pragma once

#include <span>
#include <vector>

namespace noisycluster {

// A partition of {0..n-1} into disjoint non-empty clusters, kept in canonical
// form: clusters ordered by smallest contained element id, labels renumbered
// accordingly. Immutable after construction; safe to share across threads.
class Clustering {
 public:
  Clustering() = default;  // empty placeholder (n == 0); not a valid partition

  // Canonicalizes an arbitrary non-negative label sequence.
  explicit Clustering(std::span<const int> labels);

  int n() const { return static_cast<int>(labels_.size()); }
  int k() const { return static_cast<int>(clusters_.size()); }

  int label(int v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& labels() const { return labels_; }

  // Clusters as sorted member lists, ordered by smallest member id.
  const std::vector<std::vector<int>>& clusters() const { return clusters_; }

  bool same_cluster(int u, int v) const {
    return labels_[static_cast<std::size_t>(u)] ==
           labels_[static_cast<std::size_t>(v)];
  }

  int cluster_size(int i) const {
    return static_cast<int>(clusters_[static_cast<std::size_t>(i)].size());
  }

  int max_cluster_size() const;
  int min_cluster_size() const;

  bool operator==(const Clustering& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<int> labels_;
  std::vector<std::vector<int>> clusters_;
};

Clustering partition_from_labels(std::span<const int> labels);

// True iff the two partitions are identical up to label permutation.
// Throws InvalidInput when the element counts differ.
bool partitions_equal(const Clustering& a, const Clustering& b);

// Balancedness: max cluster size <= 4n/k or min cluster size >= n/(20k).
bool is_balanced(const Clustering& c);

// Builds a clustering from explicit member sets covering {0..n-1}.
Clustering clustering_from_blocks(int n, const std::vector<std::vector<int>>& blocks);

}  // namespace noisycluster
