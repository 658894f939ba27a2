#include "noisycluster/info_optimal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisycluster/errors.hpp"
#include "noisycluster/ml_exact.hpp"
#include "noisycluster/weighted_graph.hpp"

namespace noisycluster {

int threshold_c(double p, double n, const AlgoConfig& cfg) {
  if (!(p >= 0.0 && p < 0.5)) throw InvalidInput("threshold_c: p outside [0, 0.5)");
  if (!(n >= 2.0)) throw InvalidInput("threshold_c: n < 2");
  if (!(cfg.alpha > 0.0)) throw InvalidInput("threshold_c: alpha must be positive");
  const double c = 16.0 / ((1.0 - 2.0 * p) * (1.0 - 2.0 * p));
  const double value = cfg.alpha * c * std::log(n);
  return std::max(1, static_cast<int>(std::ceil(value)));
}

bool majority_member_test(Oracle& o, int v, std::span<const int> cluster, int l) {
  if (l < 1 || static_cast<std::size_t>(l) > cluster.size())
    throw InvalidInput("majority_member_test: cluster smaller than l");
  if (std::binary_search(cluster.begin(), cluster.end(), v))
    throw InvalidInput("majority_member_test: v already in cluster");
  int yes = 0;
  for (int i = 0; i < l; ++i)
    if (o.query(v, cluster[static_cast<std::size_t>(i)]) > 0) ++yes;
  return 2 * yes > l;
}

namespace {

struct InfoOptimalRun {
  Oracle& o;
  int n;
  const AlgoConfig& cfg;
  int thr;

  WeightedPairGraph all;      // every vertex ever added to G', weights kept
  std::vector<int> current;   // the live V', ascending
  std::vector<char> assigned;
  std::vector<std::vector<int>> active;
  std::vector<PhaseEvent> log;

  InfoOptimalRun(Oracle& oracle, int n_, const AlgoConfig& cfg_, int thr_)
      : o(oracle), n(n_), cfg(cfg_), thr(thr_), assigned(static_cast<std::size_t>(n_), 0) {}

  void add_to_gprime(int v) {
    all.add_vertex(v);
    for (int u : current) all.set_weight(v, u, o.query(v, u));
    current.insert(std::lower_bound(current.begin(), current.end(), v), v);
  }

  SubgraphResult extract() {
    if (current.empty()) return SubgraphResult{{}, 0};
    if (static_cast<int>(current.size()) > cfg.subgraph_cap)
      throw InstanceTooLarge("run_info_optimal: G' grew past the subgraph solver cap (" +
                             std::to_string(current.size()) + " > " +
                             std::to_string(cfg.subgraph_cap) + ")");
    return heaviest_subgraph(all.induced(current), cfg.subgraph_cap);
  }

  void detach(const std::vector<int>& members) {
    for (int v : members) {
      assigned[static_cast<std::size_t>(v)] = 1;
      auto it = std::lower_bound(current.begin(), current.end(), v);
      current.erase(it);
    }
  }

  // Phase 2: register S as an active cluster, attach every z in V' whose
  // summed weight into the cluster is positive, then keep extracting until no
  // subgraph reaches the threshold.
  void phase2(SubgraphResult seed) {
    for (;;) {
      std::vector<int> members = seed.members;
      std::sort(members.begin(), members.end());
      detach(members);
      log.push_back({2, "cluster_created size=" + std::to_string(members.size()) +
                            " threshold=" + std::to_string(thr)});
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < current.size();) {
          const int z = current[i];
          if (all.weight_sum_to(z, members) > 0) {
            members.insert(std::lower_bound(members.begin(), members.end(), z), z);
            assigned[static_cast<std::size_t>(z)] = 1;
            current.erase(current.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
          } else {
            ++i;
          }
        }
      }
      active.push_back(std::move(members));

      seed = extract();
      if (static_cast<int>(seed.members.size()) < thr) return;
    }
  }

  RunResult finish() {
    std::vector<std::vector<int>> residual;
    if (!current.empty()) {
      if (static_cast<int>(current.size()) > cfg.ml_cap) {
        if (!cfg.residual_singletons)
          throw ResidualTooLarge("run_info_optimal: residual graph has " +
                                 std::to_string(current.size()) +
                                 " vertices, ml cap is " + std::to_string(cfg.ml_cap));
        for (int v : current) residual.push_back({v});
        log.push_back({4, "residual_singletons size=" + std::to_string(current.size())});
      } else {
        const WeightedPairGraph sub = all.induced(current);
        residual = to_global_blocks(sub, ml_partition_exact(sub, cfg.ml_cap));
        log.push_back({4, "residual_ml size=" + std::to_string(current.size())});
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
    result.min_recoverable = 6 * thr;  // c' = 6c
    return result;
  }
};

}  // namespace

RunResult run_info_optimal(Oracle& o, int n, double p, const AlgoConfig& cfg) {
  if (n != o.n()) throw InvalidInput("run_info_optimal: n mismatch with oracle");
  if (!o.symmetric() || o.p() != p)
    throw InvalidInput("run_info_optimal: requires a symmetric oracle with matching p");
  if (n < 2) throw InvalidInput("run_info_optimal: n < 2");

  InfoOptimalRun run(o, n, cfg, threshold_c(p, static_cast<double>(n), cfg));

  // Phase 1: accumulate V' in ascending id until a heavy-enough subgraph
  // appears. If V runs out first, everything is queried and Phase 4 finishes
  // the job on the complete graph.
  int next = 0;
  run.log.push_back({1, "threshold=" + std::to_string(run.thr)});
  bool have_cluster = false;
  while (next < n && static_cast<int>(run.current.size()) < run.thr)
    run.add_to_gprime(next++);
  for (;;) {
    const SubgraphResult s = run.extract();
    if (static_cast<int>(s.members.size()) >= run.thr) {
      run.phase2(s);
      have_cluster = true;
      break;
    }
    if (next >= n) break;
    run.add_to_gprime(next++);
  }

  // Phase 3: place each unexplored vertex by majority vote against the active
  // clusters (creation order, first success wins); failures join G' and may
  // trigger fresh extractions.
  if (have_cluster) {
    for (int v = 0; v < n; ++v) {
      if (run.assigned[static_cast<std::size_t>(v)] || run.all.contains(v)) continue;
      bool joined = false;
      for (auto& cluster : run.active) {
        const int l = std::min<int>(run.thr, static_cast<int>(cluster.size()));
        if (l < run.thr)
          run.log.push_back({3, "probe_below_threshold l=" + std::to_string(l)});
        if (majority_member_test(run.o, v, cluster, l)) {
          cluster.insert(std::lower_bound(cluster.begin(), cluster.end(), v), v);
          run.assigned[static_cast<std::size_t>(v)] = 1;
          joined = true;
          break;
        }
      }
      if (joined) continue;
      run.add_to_gprime(v);
      const SubgraphResult s = run.extract();
      if (static_cast<int>(s.members.size()) >= run.thr) run.phase2(s);
    }
  }

  return run.finish();
}

}  // namespace noisycluster
