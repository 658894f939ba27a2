#include "noisycluster/nonadaptive.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "noisycluster/efficient.hpp"
#include "noisycluster/errors.hpp"
#include "noisycluster/info_optimal.hpp"
#include "noisycluster/ml_exact.hpp"
#include "noisycluster/pair_rng.hpp"
#include "noisycluster/weighted_graph.hpp"

namespace noisycluster {

namespace {

std::vector<int> uniform_sample(int n, int m, std::uint64_t seed) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
  if (m >= n) return pool;
  SplitMix64 rng(seed);
  std::vector<int> sample;
  sample.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const std::size_t j = static_cast<std::size_t>(i) +
                          static_cast<std::size_t>(rng.next_below(
                              static_cast<std::uint64_t>(n - i)));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    sample.push_back(pool[static_cast<std::size_t>(i)]);
  }
  std::sort(sample.begin(), sample.end());
  return sample;
}

QueryPlan plan_from_sample(int n, std::vector<int> sample) {
  QueryPlan plan;
  plan.sample = std::move(sample);
  const auto& s = plan.sample;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      plan.pairs.emplace_back(s[i], s[j]);
  std::vector<char> in_sample(static_cast<std::size_t>(n), 0);
  for (int v : s) in_sample[static_cast<std::size_t>(v)] = 1;
  for (int u = 0; u < n; ++u) {
    if (in_sample[static_cast<std::size_t>(u)]) continue;
    for (int v : s) plan.pairs.emplace_back(u, v);
  }
  return plan;
}

void validate_plan_inputs(int n, double p, double alpha) {
  if (n < 2) throw InvalidInput("nonadaptive: n < 2");
  if (!(p >= 0.0 && p < 0.5)) throw InvalidInput("nonadaptive: p outside [0, 0.5)");
  if (!(alpha > 0.0)) throw InvalidInput("nonadaptive: alpha must be positive");
}

// Executes the plan verbatim, recording answers and the issue-order log.
WeightedPairGraph execute_plan(Oracle& o, int n, const QueryPlan& plan,
                               std::vector<std::pair<int, int>>& log) {
  WeightedPairGraph answers;
  for (int v = 0; v < n; ++v) answers.add_vertex(v);
  log.reserve(plan.pairs.size());
  for (const auto& [u, v] : plan.pairs) {
    answers.set_weight(u, v, o.query(u, v));
    log.emplace_back(u, v);
  }
  return answers;
}

// Majority vote of u against every member of the subcluster, read from the
// pre-issued answers; ties reject.
bool majority_from_answers(const WeightedPairGraph& answers, int u,
                           const std::vector<int>& members) {
  int yes = 0;
  for (int v : members)
    if (answers.weight(u, v) > 0) ++yes;
  return 2 * yes > static_cast<int>(members.size());
}

RunResult assemble(Oracle& o, int n, std::vector<std::vector<int>> active,
                   std::vector<char>& assigned, std::vector<PhaseEvent> log,
                   std::vector<std::pair<int, int>> query_log, int min_recoverable) {
  std::vector<std::vector<int>> residual;
  for (int v = 0; v < n; ++v)
    if (!assigned[static_cast<std::size_t>(v)]) residual.push_back({v});
  std::vector<std::vector<int>> blocks = active;
  blocks.insert(blocks.end(), residual.begin(), residual.end());

  RunResult result;
  result.clustering = clustering_from_blocks(n, blocks);
  result.stats = o.stats();
  result.recovered_large = std::move(active);
  result.residual = std::move(residual);
  result.phase_log = std::move(log);
  result.min_recoverable = min_recoverable;
  result.query_log = std::move(query_log);
  return result;
}

}  // namespace

QueryPlan nonadaptive_k2_plan(int n, double p, double alpha, std::uint64_t seed) {
  validate_plan_inputs(n, p, alpha);
  const double c4 = 16.0 / std::pow(1.0 - 2.0 * p, 4.0);
  const int m = std::max(
      2, std::min(n, static_cast<int>(std::ceil(alpha * 4.0 * c4 * std::log(n)))));
  return plan_from_sample(n, uniform_sample(n, m, derive_seed(seed, 0x6b32ULL)));
}

QueryPlan nonadaptive_general_plan(int n, int k, double ratio, double p,
                                   NonadaptiveMode mode, double alpha,
                                   std::uint64_t seed) {
  validate_plan_inputs(n, p, alpha);
  if (k < 1) throw InvalidInput("nonadaptive: k < 1");
  if (!(ratio >= 1.0)) throw InvalidInput("nonadaptive: ratio must be >= 1");
  const double L = std::log(n);
  double raw;
  if (mode == NonadaptiveMode::efficient) {
    raw = alpha * 64.0 * ratio * k * k * L / std::pow(1.0 - 2.0 * p, 4.0);
  } else {
    raw = alpha * 96.0 * ratio * k * L / std::pow(1.0 - 2.0 * p, 2.0);
  }
  const int m = std::max(2, std::min(n, static_cast<int>(std::ceil(raw))));
  return plan_from_sample(n, uniform_sample(n, m, derive_seed(seed, 0x6b67ULL)));
}

RunResult run_nonadaptive_k2(Oracle& o, int n, double p, const AlgoConfig& cfg) {
  if (n != o.n()) throw InvalidInput("nonadaptive: n mismatch with oracle");
  if (!o.symmetric() || o.p() != p)
    throw InvalidInput("nonadaptive: requires a symmetric oracle with matching p");

  const QueryPlan plan = nonadaptive_k2_plan(n, p, cfg.alpha, o.seed());
  std::vector<std::pair<int, int>> query_log;
  const WeightedPairGraph answers = execute_plan(o, n, plan, query_log);

  const int m = static_cast<int>(plan.sample.size());
  const EffParams params =
      EffParams::from_min_cluster(m / 2.0, m, /*majority_l=*/1, n, p);
  const auto groups =
      cluster_batch_by_symdiff(answers.induced(plan.sample), params, n, p);

  std::vector<char> assigned(static_cast<std::size_t>(n), 0);
  std::vector<std::vector<int>> active;
  std::vector<PhaseEvent> log;
  log.push_back({1, "sample=" + std::to_string(m) +
                        " groups=" + std::to_string(groups.size())});

  if (!groups.empty()) {
    // At most one group can reach half the sample. Votes go against the
    // fixed recovered subcluster: those answers are all pre-issued.
    const std::vector<int>& seed_members = groups.front();
    std::vector<int> grown = seed_members;
    std::vector<int> rest;
    for (int v : seed_members) assigned[static_cast<std::size_t>(v)] = 1;
    for (int u = 0; u < n; ++u) {
      if (assigned[static_cast<std::size_t>(u)]) continue;
      if (majority_from_answers(answers, u, seed_members)) {
        assigned[static_cast<std::size_t>(u)] = 1;
        grown.insert(std::lower_bound(grown.begin(), grown.end(), u), u);
      } else {
        rest.push_back(u);
      }
    }
    for (int u : rest) assigned[static_cast<std::size_t>(u)] = 1;
    active.push_back(std::move(grown));
    if (!rest.empty()) active.push_back(std::move(rest));
  } else {
    log.push_back({1, "no_majority_subcluster"});
  }

  return assemble(o, n, std::move(active), assigned, std::move(log),
                  std::move(query_log), 1);
}

RunResult run_nonadaptive_general(Oracle& o, int n, int k, double ratio, double p,
                                  NonadaptiveMode mode, const AlgoConfig& cfg) {
  if (n != o.n()) throw InvalidInput("nonadaptive: n mismatch with oracle");
  if (!o.symmetric() || o.p() != p)
    throw InvalidInput("nonadaptive: requires a symmetric oracle with matching p");

  const QueryPlan plan =
      nonadaptive_general_plan(n, k, ratio, p, mode, cfg.alpha, o.seed());
  if (mode == NonadaptiveMode::info_optimal &&
      static_cast<int>(plan.sample.size()) > cfg.subgraph_cap)
    throw InstanceTooLarge("nonadaptive info_optimal: sample of " +
                           std::to_string(plan.sample.size()) +
                           " exceeds the subgraph solver cap");

  std::vector<std::pair<int, int>> query_log;
  const WeightedPairGraph answers = execute_plan(o, n, plan, query_log);
  const int m = static_cast<int>(plan.sample.size());

  std::vector<std::vector<int>> subclusters;
  int min_recoverable = 1;
  std::vector<PhaseEvent> log;

  if (mode == NonadaptiveMode::efficient) {
    const double min_out = std::max(2.0, m / (2.0 * k * ratio));
    const EffParams params = EffParams::from_min_cluster(min_out, m, 1, n, p);
    subclusters = cluster_batch_by_symdiff(answers.induced(plan.sample), params, n, p);
    min_recoverable = static_cast<int>(std::ceil(min_out));
  } else {
    const int thr = threshold_c(p, n, cfg);
    std::vector<int> working = plan.sample;
    while (!working.empty()) {
      const SubgraphResult s =
          heaviest_subgraph(answers.induced(working), cfg.subgraph_cap);
      if (static_cast<int>(s.members.size()) < thr) break;
      std::vector<int> members = s.members;
      for (int v : members)
        working.erase(std::find(working.begin(), working.end(), v));
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t i = 0; i < working.size();) {
          const int z = working[i];
          if (answers.weight_sum_to(z, members) > 0) {
            members.insert(std::lower_bound(members.begin(), members.end(), z), z);
            working.erase(working.begin() + static_cast<std::ptrdiff_t>(i));
            changed = true;
          } else {
            ++i;
          }
        }
      }
      subclusters.push_back(std::move(members));
    }
    min_recoverable = 6 * thr;
  }
  log.push_back({1, "sample=" + std::to_string(m) +
                        " subclusters=" + std::to_string(subclusters.size())});

  // Commit every recovered subcluster before growing any of them, then give
  // each leftover vertex to the first subcluster whose majority vote (over
  // the fixed, fully pre-issued seed members) accepts it.
  std::vector<char> assigned(static_cast<std::size_t>(n), 0);
  for (const auto& cluster : subclusters)
    for (int v : cluster) assigned[static_cast<std::size_t>(v)] = 1;
  std::vector<std::vector<int>> active(subclusters.size());
  for (std::size_t c = 0; c < subclusters.size(); ++c) active[c] = subclusters[c];
  for (int u = 0; u < n; ++u) {
    if (assigned[static_cast<std::size_t>(u)]) continue;
    for (std::size_t c = 0; c < subclusters.size(); ++c) {
      if (!majority_from_answers(answers, u, subclusters[c])) continue;
      assigned[static_cast<std::size_t>(u)] = 1;
      active[c].insert(std::lower_bound(active[c].begin(), active[c].end(), u), u);
      break;
    }
  }

  return assemble(o, n, std::move(active), assigned, std::move(log),
                  std::move(query_log), min_recoverable);
}

}  // namespace noisycluster
