#include "noisycluster/weighted_graph.hpp"

#include <algorithm>

#include "noisycluster/errors.hpp"

namespace noisycluster {

std::uint64_t WeightedPairGraph::key(int u, int v) {
  const std::uint64_t lo = static_cast<std::uint64_t>(std::min(u, v));
  const std::uint64_t hi = static_cast<std::uint64_t>(std::max(u, v));
  return (lo << 32) | hi;
}

WeightedPairGraph::WeightedPairGraph(const std::vector<int>& vertex_ids) {
  for (int id : vertex_ids) add_vertex(id);
}

void WeightedPairGraph::add_vertex(int id) {
  if (id < 0) throw InvalidInput("graph: negative vertex id");
  if (!index_.emplace(id, static_cast<int>(ids_.size())).second)
    throw InvalidInput("graph: duplicate vertex");
  ids_.push_back(id);
}

void WeightedPairGraph::remove_vertices(const std::vector<int>& ids) {
  std::unordered_set<int> gone(ids.begin(), ids.end());
  if (gone.empty()) return;
  std::vector<int> kept;
  kept.reserve(ids_.size());
  for (int id : ids_)
    if (!gone.count(id)) kept.push_back(id);
  for (auto it = weights_.begin(); it != weights_.end();) {
    const int lo = static_cast<int>(it->first >> 32);
    const int hi = static_cast<int>(it->first & 0xffffffffULL);
    if (gone.count(lo) || gone.count(hi)) {
      it = weights_.erase(it);
    } else {
      ++it;
    }
  }
  ids_ = std::move(kept);
  index_.clear();
  for (std::size_t i = 0; i < ids_.size(); ++i)
    index_.emplace(ids_[i], static_cast<int>(i));
}

void WeightedPairGraph::set_weight(int u, int v, int w) {
  if (u == v) throw InvalidInput("graph: self-weight excluded");
  if (w != 1 && w != -1) throw InvalidInput("graph: weight must be +1 or -1");
  if (!contains(u) || !contains(v))
    throw InvalidInput("graph: weight between missing vertices");
  weights_[key(u, v)] = static_cast<std::int8_t>(w);
}

int WeightedPairGraph::weight(int u, int v) const {
  auto it = weights_.find(key(u, v));
  if (it == weights_.end()) throw IncompleteGraph("graph: pair not queried");
  return it->second;
}

bool WeightedPairGraph::has_weight(int u, int v) const {
  return weights_.count(key(u, v)) != 0;
}

bool WeightedPairGraph::is_complete() const {
  const std::size_t m = ids_.size();
  return weights_.size() == m * (m - 1) / 2;
}

long long WeightedPairGraph::weight_sum_to(int z,
                                           const std::vector<int>& members) const {
  long long sum = 0;
  for (int u : members) sum += weight(z, u);
  return sum;
}

WeightedPairGraph WeightedPairGraph::induced(const std::vector<int>& subset) const {
  WeightedPairGraph sub(subset);
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      auto it = weights_.find(key(subset[i], subset[j]));
      if (it != weights_.end()) sub.set_weight(subset[i], subset[j], it->second);
    }
  }
  return sub;
}

WeightedPairGraph::Dense WeightedPairGraph::dense() const {
  if (!is_complete()) throw IncompleteGraph("graph: dense view needs a complete graph");
  Dense d;
  d.ids = ids_;
  std::sort(d.ids.begin(), d.ids.end());
  d.m = static_cast<int>(d.ids.size());
  d.w.assign(static_cast<std::size_t>(d.m) * d.m, 0);
  for (int i = 0; i < d.m; ++i) {
    for (int j = i + 1; j < d.m; ++j) {
      auto it = weights_.find(key(d.ids[i], d.ids[j]));
      d.w[static_cast<std::size_t>(i) * d.m + j] = it->second;
      d.w[static_cast<std::size_t>(j) * d.m + i] = it->second;
    }
  }
  return d;
}

int weight_of(int answer) {
  if (answer != 1 && answer != -1)
    throw InvalidInput("weight_of: answer must be +1 or -1");
  return answer;
}

int weight_from_indicator(int z) {
  if (z != 0 && z != 1)
    throw InvalidInput("weight_from_indicator: z must be 0 or 1");
  return 2 * z - 1;
}

}  // namespace noisycluster
