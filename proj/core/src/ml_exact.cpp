#include "noisycluster/ml_exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "noisycluster/errors.hpp"

namespace noisycluster {

namespace {

using Dense = WeightedPairGraph::Dense;

Dense checked_dense(const WeightedPairGraph& g, int cap, const char* op) {
  if (g.size() == 0) throw InvalidInput(std::string(op) + ": empty graph");
  if (g.size() > cap)
    throw InstanceTooLarge(std::string(op) + ": " + std::to_string(g.size()) +
                           " vertices exceeds cap " + std::to_string(cap));
  return g.dense();  // throws IncompleteGraph when pairs are missing
}

// (weight desc, size asc, lex asc) on sorted member lists.
bool better(long long w, const std::vector<int>& members, long long best_w,
            const std::vector<int>& best_members) {
  if (w != best_w) return w > best_w;
  if (members.size() != best_members.size())
    return members.size() < best_members.size();
  return members < best_members;
}

class SubgraphBranchAndBound {
 public:
  explicit SubgraphBranchAndBound(const Dense& d) : d_(d), m_(d.m) {
    pos_deg_.assign(m_, 0);
    for (int i = 0; i < m_; ++i)
      for (int j = 0; j < m_; ++j)
        if (j != i && d_.at(i, j) > 0) ++pos_deg_[i];
    order_.resize(m_);
    for (int i = 0; i < m_; ++i) order_[i] = i;
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      if (pos_deg_[a] != pos_deg_[b]) return pos_deg_[a] > pos_deg_[b];
      return a < b;
    });
    gain_.assign(m_, 0);
    pos_remaining_ = pos_deg_;  // all vertices start undecided
    // Seed incumbent: the smallest-id singleton, weight 0. No non-empty set
    // beats it without positive weight, matching the tie-break rule.
    best_w_ = 0;
    best_members_ = {0};
  }

  SubgraphResult solve() {
    dfs(0);
    SubgraphResult result;
    result.weight = best_w_;
    result.members.reserve(best_members_.size());
    for (int i : best_members_) result.members.push_back(d_.ids[i]);
    return result;
  }

 private:
  void dfs(int t) {
    // Optimistic completion bound, doubled to keep half-weights integral.
    long long bound2 = 2 * cur_w_;
    for (int s = t; s < m_; ++s) {
      const int z = order_[s];
      const long long head = 2 * gain_[z] + pos_remaining_[z];
      if (head > 0) bound2 += head;
    }
    if (bound2 < 2 * best_w_) return;  // ties stay explored
    if (t == m_) return;

    const int v = order_[t];

    // Include v.
    cur_w_ += gain_[v];
    chosen_.push_back(v);
    for (int s = t + 1; s < m_; ++s) {
      const int z = order_[s];
      gain_[z] += d_.at(z, v);
      if (d_.at(z, v) > 0) --pos_remaining_[z];
    }
    maybe_update_incumbent();
    dfs(t + 1);
    for (int s = t + 1; s < m_; ++s) {
      const int z = order_[s];
      gain_[z] -= d_.at(z, v);
      if (d_.at(z, v) > 0) ++pos_remaining_[z];
    }
    chosen_.pop_back();
    cur_w_ -= gain_[v];

    // Exclude v.
    for (int s = t + 1; s < m_; ++s) {
      const int z = order_[s];
      if (d_.at(z, v) > 0) --pos_remaining_[z];
    }
    dfs(t + 1);
    for (int s = t + 1; s < m_; ++s) {
      const int z = order_[s];
      if (d_.at(z, v) > 0) ++pos_remaining_[z];
    }
  }

  void maybe_update_incumbent() {
    if (cur_w_ < best_w_) return;
    if (cur_w_ == best_w_ && chosen_.size() > best_members_.size()) return;
    std::vector<int> sorted = chosen_;
    std::sort(sorted.begin(), sorted.end());
    if (better(cur_w_, sorted, best_w_, best_members_)) {
      best_w_ = cur_w_;
      best_members_ = std::move(sorted);
    }
  }

  const Dense& d_;
  int m_;
  std::vector<int> pos_deg_;
  std::vector<int> order_;
  std::vector<int> chosen_;
  std::vector<long long> gain_;   // signed weight to the chosen set
  std::vector<int> pos_remaining_;  // +1 degree into the undecided set
  long long cur_w_ = 0;
  long long best_w_;
  std::vector<int> best_members_;
};

}  // namespace

Clustering ml_partition_exact(const WeightedPairGraph& g, int cap) {
  const Dense d = checked_dense(g, cap, "ml_partition_exact");
  const int m = d.m;

  std::vector<int> labels(m, 0);
  std::vector<std::vector<int>> blocks;  // members per block, build order
  long long best = -1;                   // any partition of one vertex scores 0
  std::vector<int> best_labels;
  long long cur = 0;

  // Restricted-growth-string order: vertex i joins blocks 0..used-1 or opens
  // block `used`; the first maximizer in this order wins ties.
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == m) {
      if (cur > best) {
        best = cur;
        best_labels = labels;
      }
      return;
    }
    for (int b = 0; b <= used && b < m; ++b) {
      long long delta = 0;
      if (b < used)
        for (int j : blocks[b]) delta += d.at(j, i);
      if (b == used) blocks.emplace_back();
      blocks[b].push_back(i);
      labels[i] = b;
      cur += delta;
      self(self, i + 1, std::max(used, b + 1));
      cur -= delta;
      blocks[b].pop_back();
      if (b == used) blocks.pop_back();
    }
  };
  rec(rec, 0, 0);
  return Clustering(best_labels);
}

std::vector<std::vector<int>> to_global_blocks(const WeightedPairGraph& g,
                                               const Clustering& local) {
  std::vector<int> ids = g.vertices();
  std::sort(ids.begin(), ids.end());
  if (local.n() != static_cast<int>(ids.size()))
    throw InvalidInput("to_global_blocks: size mismatch");
  std::vector<std::vector<int>> blocks;
  blocks.reserve(local.clusters().size());
  for (const auto& cluster : local.clusters()) {
    std::vector<int> block;
    block.reserve(cluster.size());
    for (int i : cluster) block.push_back(ids[static_cast<std::size_t>(i)]);
    blocks.push_back(std::move(block));
  }
  return blocks;
}

long long intra_weight(const WeightedPairGraph& g, const Clustering& local) {
  const Dense d = g.dense();
  if (local.n() != d.m) throw InvalidInput("intra_weight: size mismatch");
  long long total = 0;
  for (int i = 0; i < d.m; ++i)
    for (int j = i + 1; j < d.m; ++j)
      if (local.same_cluster(i, j)) total += d.at(i, j);
  return total;
}

long long agreement_count(const WeightedPairGraph& g, const Clustering& local) {
  const Dense d = g.dense();
  if (local.n() != d.m) throw InvalidInput("agreement_count: size mismatch");
  long long agreements = 0;
  for (int i = 0; i < d.m; ++i)
    for (int j = i + 1; j < d.m; ++j) {
      const bool same = local.same_cluster(i, j);
      if ((same && d.at(i, j) > 0) || (!same && d.at(i, j) < 0)) ++agreements;
    }
  return agreements;
}

SubgraphResult heaviest_subgraph(const WeightedPairGraph& g, int cap) {
  const Dense d = checked_dense(g, cap, "heaviest_subgraph");
  return SubgraphBranchAndBound(d).solve();
}

SubgraphResult heaviest_subgraph_enumerate(const WeightedPairGraph& g, int cap) {
  const Dense d = checked_dense(g, cap, "heaviest_subgraph_enumerate");
  const int m = d.m;
  const std::uint32_t all = (m == 32) ? 0xffffffffu : ((1u << m) - 1);

  std::vector<std::int32_t> weight(static_cast<std::size_t>(all) + 1, 0);
  std::uint32_t best_mask = 1;  // smallest-id singleton, weight 0
  std::int32_t best_w = 0;
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    const std::uint32_t rest = mask ^ low;
    const int low_idx = std::countr_zero(low);
    std::int32_t w = weight[rest];
    for (std::uint32_t r = rest; r; r &= r - 1)
      w += d.at(low_idx, std::countr_zero(r));
    weight[mask] = w;

    const int size = std::popcount(mask);
    const int best_size = std::popcount(best_mask);
    bool take = false;
    if (w != best_w) {
      take = w > best_w;
    } else if (size != best_size) {
      take = size < best_size;
    } else if (mask != best_mask) {
      // Equal weight and size: lex-smaller sorted member list wins, i.e. the
      // mask holding the lowest differing vertex.
      take = (mask >> std::countr_zero(mask ^ best_mask)) & 1u;
    }
    if (take) {
      best_mask = mask;
      best_w = w;
    }
  }

  SubgraphResult result;
  result.weight = best_w;
  for (std::uint32_t r = best_mask; r; r &= r - 1)
    result.members.push_back(d.ids[static_cast<std::size_t>(std::countr_zero(r))]);
  return result;
}

}  // namespace noisycluster
