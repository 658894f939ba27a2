#include "noisycluster/efficient.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "noisycluster/errors.hpp"
#include "noisycluster/info_optimal.hpp"
#include "noisycluster/ml_exact.hpp"
#include "noisycluster/pair_rng.hpp"

namespace noisycluster {

namespace {

void validate_rates(double p, double n) {
  if (!(p >= 0.0 && p < 0.5)) throw InvalidInput("efficient: p outside [0, 0.5)");
  if (!(n >= 1.0)) throw InvalidInput("efficient: n < 1");
}

double pow4(double x) { return x * x * x * x; }

}  // namespace

EffParams EffParams::known_k(double n, int k, double p, double alpha) {
  validate_rates(p, n);
  if (k < 1) throw InvalidInput("EffParams: k < 1");
  if (!(alpha > 0.0)) throw InvalidInput("EffParams: alpha must be positive");
  const double L = std::log(n);
  const double base = alpha * 64.0 * L / pow4(1.0 - 2.0 * p);
  const double min_out = base * k;
  // A batch needs at least one pair to cluster.
  const int batch = std::max(2, static_cast<int>(std::ceil(base * k * k)));
  const int l = std::max(1, static_cast<int>(std::ceil(base)));
  return from_min_cluster(min_out, batch, l, n, p);
}

EffParams EffParams::from_min_cluster(double min_cluster_out, int batch_size,
                                      int majority_l, double n, double p) {
  validate_rates(p, n);
  if (!(min_cluster_out > 0.0) || batch_size < 1 || majority_l < 1)
    throw InvalidInput("EffParams: non-positive parameter");
  EffParams params;
  params.batch_size = batch_size;
  params.min_cluster_out = min_cluster_out;
  params.majority_l = majority_l;
  const double q = 1.0 - 2.0 * p;
  const double root = min_cluster_out * q * q / 8.0;  // sqrt(threshold_n * ln n)
  params.threshold_n = root * root / std::log(n);
  return params;
}

double threshold_T(double a, double N, double n, double p) {
  validate_rates(p, n);
  if (!(N >= 0.0)) throw InvalidInput("threshold_T: negative N");
  return p * a + (6.0 / (1.0 - 2.0 * p)) * std::sqrt(N * std::log(n));
}

double threshold_theta(double a, double N, double n, double p) {
  validate_rates(p, n);
  if (!(N >= 0.0)) throw InvalidInput("threshold_theta: negative N");
  return 2.0 * p * (1.0 - p) * a + 2.0 * std::sqrt(N * std::log(n));
}

double cluster_size_estimate(int pos_degree_incl_self, int sample_size, double p) {
  return (pos_degree_incl_self - p * sample_size) / (1.0 - 2.0 * p);
}

std::vector<std::vector<int>> cluster_batch_by_symdiff(const WeightedPairGraph& g,
                                                       const EffParams& params,
                                                       double n, double p,
                                                       SymdiffStats* stats) {
  if (g.size() > params.batch_size)
    throw InvalidInput("cluster_batch_by_symdiff: batch larger than N");
  const WeightedPairGraph::Dense d = g.dense();  // IncompleteGraph if partial
  const int m = d.m;

  const int words = (m + 63) / 64;
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(m) * words, 0);
  std::vector<int> pos_deg(m, 0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (j != i && d.at(i, j) > 0) {
        rows[static_cast<std::size_t>(i) * words + j / 64] |= 1ULL << (j % 64);
        ++pos_deg[i];
      }
    }
  }

  const double big_t = threshold_T(m, params.threshold_n, n, p);
  const double theta = threshold_theta(m, params.threshold_n, n, p);

  std::vector<int> candidates;
  for (int i = 0; i < m; ++i)
    if (pos_deg[i] >= big_t) candidates.push_back(i);

  // Single-link closure of the theta relation.
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  long long comparisons = 0;
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    for (std::size_t b = a + 1; b < candidates.size(); ++b) {
      const int u = candidates[a];
      const int v = candidates[b];
      int diff = 0;
      const std::uint64_t* ru = rows.data() + static_cast<std::size_t>(u) * words;
      const std::uint64_t* rv = rows.data() + static_cast<std::size_t>(v) * words;
      for (int w = 0; w < words; ++w) diff += std::popcount(ru[w] ^ rv[w]);
      diff -= 2 * (d.at(u, v) > 0 ? 1 : 0);  // drop columns u and v
      comparisons += m;  // one element-wise pass per candidate pair
      if (diff <= theta) parent[find(u)] = find(v);
    }
  }
  if (stats) stats->comparisons += comparisons;

  std::vector<std::vector<int>> groups_by_root(static_cast<std::size_t>(m));
  for (int u : candidates)
    groups_by_root[static_cast<std::size_t>(find(u))].push_back(u);

  std::vector<std::vector<int>> out;
  for (auto& group : groups_by_root) {
    if (group.empty() || static_cast<double>(group.size()) < params.min_cluster_out)
      continue;
    std::vector<int> members;
    members.reserve(group.size());
    for (int i : group) members.push_back(d.ids[static_cast<std::size_t>(i)]);
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

namespace {

struct EfficientState {
  Oracle& o;
  int n;
  const AlgoConfig& cfg;
  std::vector<char> assigned;
  std::vector<std::vector<int>> active;
  std::vector<PhaseEvent> log;

  EfficientState(Oracle& oracle, int n_, const AlgoConfig& cfg_)
      : o(oracle), n(n_), cfg(cfg_), assigned(static_cast<std::size_t>(n_), 0) {}

  int unassigned_count() const {
    int total = 0;
    for (char a : assigned) total += a == 0;
    return total;
  }

  // Commits every emitted group first, then Phase 3C: each unassigned vertex
  // is majority-tested against this round's clusters in emission order, first
  // success wins. Committing up front keeps the groups disjoint from growth.
  // `batch` loses every member that gets assigned.
  void commit_and_grow(const std::vector<std::vector<int>>& groups, int l,
                       WeightedPairGraph* batch) {
    const std::size_t first_new = active.size();
    for (const auto& group : groups) {
      for (int v : group) assigned[static_cast<std::size_t>(v)] = 1;
      if (batch) batch->remove_vertices(group);
      active.push_back(group);
    }
    std::vector<int> joined;
    for (int w = 0; w < n; ++w) {
      if (assigned[static_cast<std::size_t>(w)]) continue;
      for (std::size_t c = first_new; c < active.size(); ++c) {
        auto& cluster = active[c];
        const int use = std::min<int>(l, static_cast<int>(cluster.size()));
        if (majority_member_test(o, w, cluster, use)) {
          cluster.insert(std::lower_bound(cluster.begin(), cluster.end(), w), w);
          assigned[static_cast<std::size_t>(w)] = 1;
          joined.push_back(w);
          break;
        }
      }
    }
    if (batch && !joined.empty()) batch->remove_vertices(joined);
  }

  RunResult finish(const WeightedPairGraph* residual_graph, int min_recoverable,
                   int doubling_rounds) {
    std::vector<int> leftover;
    for (int v = 0; v < n; ++v)
      if (!assigned[static_cast<std::size_t>(v)]) leftover.push_back(v);

    std::vector<std::vector<int>> residual;
    if (!leftover.empty()) {
      bool ml_done = false;
      if (cfg.efficient_residual_ml && residual_graph &&
          static_cast<int>(leftover.size()) <= cfg.ml_cap) {
        const bool covered = std::all_of(leftover.begin(), leftover.end(),
                                         [&](int v) { return residual_graph->contains(v); });
        if (covered) {
          const WeightedPairGraph sub = residual_graph->induced(leftover);
          if (sub.is_complete()) {
            residual = to_global_blocks(sub, ml_partition_exact(sub, cfg.ml_cap));
            log.push_back({4, "residual_ml size=" + std::to_string(leftover.size())});
            ml_done = true;
          }
        }
      }
      if (!ml_done) {
        for (int v : leftover) residual.push_back({v});
        log.push_back({4, "unclustered_residual size=" + std::to_string(leftover.size())});
      }
    }

    std::vector<std::vector<int>> blocks = active;
    blocks.insert(blocks.end(), residual.begin(), residual.end());

    RunResult result;
    result.clustering = clustering_from_blocks(n, blocks);
    result.stats = o.stats();
    result.recovered_large = active;
    result.residual = std::move(residual);
    result.phase_log = std::move(log);
    result.min_recoverable = min_recoverable;
    result.doubling_rounds = doubling_rounds;
    return result;
  }
};

void validate_run(const Oracle& o, int n, double p) {
  if (n != o.n()) throw InvalidInput("efficient: n mismatch with oracle");
  if (!o.symmetric() || o.p() != p)
    throw InvalidInput("efficient: requires a symmetric oracle with matching p");
  if (n < 2) throw InvalidInput("efficient: n < 2");
}

}  // namespace

RunResult run_efficient_known_k(Oracle& o, int n, int k, double p,
                                const AlgoConfig& cfg) {
  validate_run(o, n, p);
  if (k < 1) throw InvalidInput("run_efficient_known_k: k < 1");

  const EffParams params = EffParams::known_k(n, k, p, cfg.alpha);
  EfficientState state(o, n, cfg);
  WeightedPairGraph batch;
  int next = 0;

  for (;;) {
    // Top up the batch with fresh unassigned vertices, ascending id.
    while (batch.size() < params.batch_size && next < n) {
      if (state.assigned[static_cast<std::size_t>(next)] || batch.contains(next)) {
        ++next;
        continue;
      }
      const int v = next++;
      std::vector<int> existing = batch.vertices();
      batch.add_vertex(v);
      for (int u : existing) batch.set_weight(v, u, o.query(v, u));
    }
    if (batch.size() == 0) break;

    const auto groups = cluster_batch_by_symdiff(batch, params, n, p);
    state.log.push_back({1, "batch size=" + std::to_string(batch.size()) +
                                " groups=" + std::to_string(groups.size())});
    if (groups.empty()) {
      state.log.push_back({1, "abort"});
      break;
    }
    state.commit_and_grow(groups, params.majority_l, &batch);
    if (state.unassigned_count() == 0) break;
  }

  return state.finish(&batch, static_cast<int>(std::ceil(params.min_cluster_out)), 0);
}

RunResult run_efficient_unknown_k(Oracle& o, int n, double p,
                                  const AlgoConfig& cfg) {
  validate_run(o, n, p);

  EfficientState state(o, n, cfg);
  SplitMix64 rng(derive_seed(o.seed(), 0x756b6eULL));
  const double L = std::log(static_cast<double>(n));
  const double den4 = pow4(1.0 - 2.0 * p);

  int ell = 2;
  int doubling_rounds = 0;  // number of distinct guesses of k tried
  int last_counted_ell = 0;
  WeightedPairGraph last_sample_graph;

  for (;;) {
    std::vector<int> pool;
    for (int v = 0; v < n; ++v)
      if (!state.assigned[static_cast<std::size_t>(v)]) pool.push_back(v);
    if (pool.empty()) break;

    const EffParams params = EffParams::known_k(n, ell, p, cfg.alpha);
    const bool whole = params.batch_size >= static_cast<int>(pool.size());
    std::vector<int> sample;
    if (whole) {
      sample = pool;
    } else {
      // Partial Fisher-Yates keeps the draw uniform and seeded.
      for (int i = 0; i < params.batch_size; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) +
            static_cast<std::size_t>(rng.next_below(pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        sample.push_back(pool[static_cast<std::size_t>(i)]);
      }
      std::sort(sample.begin(), sample.end());
    }
    if (ell != last_counted_ell) {
      ++doubling_rounds;
      last_counted_ell = ell;
    }

    WeightedPairGraph graph(sample);
    for (std::size_t i = 0; i < sample.size(); ++i)
      for (std::size_t j = i + 1; j < sample.size(); ++j)
        graph.set_weight(sample[i], sample[j], o.query(sample[i], sample[j]));

    const WeightedPairGraph::Dense d = graph.dense();
    double max_estimate = 0.0;
    for (int i = 0; i < d.m; ++i) {
      int deg = 1;  // v counts itself as a +1 neighbor in the size estimate
      for (int j = 0; j < d.m; ++j)
        if (j != i && d.at(i, j) > 0) ++deg;
      max_estimate = std::max(max_estimate, cluster_size_estimate(deg, d.m, p));
    }
    const double trigger = cfg.alpha * 6.0 * ell * L / den4;
    state.log.push_back({1, "round ell=" + std::to_string(ell) +
                                " sample=" + std::to_string(sample.size()) +
                                " trigger=" + std::to_string(trigger)});

    bool emitted = false;
    if (max_estimate > trigger) {
      const auto groups = cluster_batch_by_symdiff(graph, params, n, p);
      if (!groups.empty()) {
        emitted = true;
        state.commit_and_grow(groups, params.majority_l, nullptr);
      }
    }
    last_sample_graph = std::move(graph);

    if (!emitted) {
      if (whole) {
        state.log.push_back({1, "stop_whole_graph ell=" + std::to_string(ell)});
        break;
      }
      ell *= 2;
    }
  }

  const double min_out = cfg.alpha * 64.0 * 2.0 * L / den4;  // at the first guess
  return state.finish(&last_sample_graph, static_cast<int>(std::ceil(min_out)),
                      doubling_rounds);
}

}  // namespace noisycluster
