#pragma once

#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace noisycluster {

// Partially queried pair graph with +-1 edge weights (w = 2z-1 in the 0/1
// encoding of oracle answers). Self-weights are excluded. ML operations
// require the graph to be complete on its vertex set.
class WeightedPairGraph {
 public:
  WeightedPairGraph() = default;
  explicit WeightedPairGraph(const std::vector<int>& vertex_ids);

  void add_vertex(int id);
  void remove_vertices(const std::vector<int>& ids);

  void set_weight(int u, int v, int w);  // w in {+1,-1}; u != v; both present
  int weight(int u, int v) const;        // throws when the pair is unset
  bool has_weight(int u, int v) const;

  int size() const { return static_cast<int>(ids_.size()); }
  bool contains(int id) const { return index_.count(id) != 0; }
  const std::vector<int>& vertices() const { return ids_; }
  std::size_t weight_count() const { return weights_.size(); }
  bool is_complete() const;

  // Sum of weights from z to every member of the given vertex set.
  long long weight_sum_to(int z, const std::vector<int>& members) const;

  // Subgraph induced on the given vertices, copying every stored weight
  // between them.
  WeightedPairGraph induced(const std::vector<int>& subset) const;

  // Row-major m x m snapshot with vertices sorted by ascending id (0 on the
  // diagonal). Throws IncompleteGraph when any pair is unset.
  struct Dense {
    std::vector<int> ids;             // ascending
    std::vector<std::int8_t> w;       // m*m
    int m = 0;
    std::int8_t at(int i, int j) const { return w[static_cast<std::size_t>(i) * m + j]; }
  };
  Dense dense() const;

 private:
  static std::uint64_t key(int u, int v);

  std::vector<int> ids_;  // insertion order
  std::unordered_map<int, int> index_;
  std::unordered_map<std::uint64_t, std::int8_t> weights_;
};

// Oracle answers are already +-1; in the 0/1 encoding this is w = 2z-1.
int weight_of(int answer);
int weight_from_indicator(int z);

}  // namespace noisycluster
