#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <unordered_map>

#include "noisycluster/clustering.hpp"

namespace noisycluster {

struct QueryStats {
  std::int64_t distinct_pairs = 0;  // unordered pairs queried at least once
  std::int64_t total_calls = 0;     // every invocation, cache hits included
};

// Simulates the faulty pairwise oracle of the query-cluster problem.
//
// A same-cluster query answers +1 with probability 1-p, a cross-cluster query
// answers +1 with probability q (the symmetric case used by the algorithms is
// q = p). Repeating a query returns the cached answer; the answer function is
// a pure function of (seed, min(u,v), max(u,v), truth), so two oracles built
// alike agree pair-by-pair no matter the query order.
//
// Mutable (cache + counters): confine one oracle to one trial/thread.
class Oracle {
 public:
  Oracle(Clustering truth, double p, double q, std::uint64_t seed);

  // Reconstructs an oracle from dumped answers; queries outside the dump
  // throw InvalidInput. Used for audit/replay and for scripted-answer tests.
  static Oracle replay(int n, const std::vector<std::pair<std::pair<int, int>, int>>& answers);

  // Answer in {+1,-1}. Throws SelfQuery when u == v, InvalidInput when out of
  // range. First call on a pair draws and caches; later calls are free hits.
  int query(int u, int v);

  const QueryStats& stats() const { return stats_; }
  int n() const { return n_; }
  double p() const { return p_; }
  double q() const { return q_; }
  std::uint64_t seed() const { return seed_; }
  bool symmetric() const { return p_ == q_; }
  std::int64_t cached_answers() const { return static_cast<std::int64_t>(cache_.size()); }

  // CSV rows "u,v,answer" with u < v, sorted; inverse of replay_from_csv.
  void dump_answers(std::ostream& out) const;
  static Oracle replay_from_csv(int n, std::istream& in);

 private:
  Oracle() = default;

  struct Entry {
    std::int8_t answer;
    bool touched;  // counted in distinct_pairs yet
  };

  int n_ = 0;
  std::optional<Clustering> truth_;  // absent in replay mode
  double p_ = 0.0;
  double q_ = 0.0;
  std::uint64_t seed_ = 0;
  std::unordered_map<std::uint64_t, Entry> cache_;
  QueryStats stats_;
};

inline Oracle build_oracle(Clustering truth, double p, double q,
                           std::uint64_t seed) {
  return Oracle(std::move(truth), p, q, seed);
}

}  // namespace noisycluster
