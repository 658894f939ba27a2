#include "noisycluster/clustering.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

#include "noisycluster/errors.hpp"

namespace noisycluster {

Clustering::Clustering(std::span<const int> labels) {
  if (labels.empty()) throw InvalidInput("clustering: empty label sequence");
  labels_.resize(labels.size());
  std::unordered_map<int, int> relabel;  // original label -> canonical id
  relabel.reserve(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    const int raw = labels[v];
    if (raw < 0) throw InvalidInput("clustering: negative label");
    auto [it, fresh] = relabel.emplace(raw, static_cast<int>(clusters_.size()));
    if (fresh) clusters_.emplace_back();
    labels_[v] = it->second;
    clusters_[static_cast<std::size_t>(it->second)].push_back(
        static_cast<int>(v));
  }
  // First-occurrence relabeling orders clusters by smallest member id, and
  // members are appended in ascending order, so the result is canonical.
}

int Clustering::max_cluster_size() const {
  int best = 0;
  for (const auto& c : clusters_) best = std::max<int>(best, static_cast<int>(c.size()));
  return best;
}

int Clustering::min_cluster_size() const {
  int best = n();
  for (const auto& c : clusters_) best = std::min<int>(best, static_cast<int>(c.size()));
  return best;
}

Clustering partition_from_labels(std::span<const int> labels) {
  return Clustering(labels);
}

bool partitions_equal(const Clustering& a, const Clustering& b) {
  if (a.n() != b.n())
    throw InvalidInput("partitions_equal: element counts differ");
  return a.labels() == b.labels();  // canonical form makes this exact
}

bool is_balanced(const Clustering& c) {
  const std::int64_t n = c.n();
  const std::int64_t k = c.k();
  const std::int64_t max_size = c.max_cluster_size();
  const std::int64_t min_size = c.min_cluster_size();
  return max_size * k <= 4 * n || min_size * 20 * k >= n;
}

Clustering clustering_from_blocks(int n,
                                  const std::vector<std::vector<int>>& blocks) {
  std::vector<int> labels(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (const auto& block : blocks) {
    for (int v : block) {
      if (v < 0 || v >= n) throw InvalidInput("blocks: element out of range");
      if (labels[static_cast<std::size_t>(v)] != -1)
        throw InvalidInput("blocks: element assigned twice");
      labels[static_cast<std::size_t>(v)] = next;
    }
    if (!block.empty()) ++next;
  }
  for (int v = 0; v < n; ++v)
    if (labels[static_cast<std::size_t>(v)] == -1)
      throw InvalidInput("blocks: element unassigned");
  return Clustering(labels);
}

}  // namespace noisycluster
