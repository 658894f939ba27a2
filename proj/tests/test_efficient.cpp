#include <doctest.h>

#include <cmath>
#include <vector>

#include "noisycluster/efficient.hpp"
#include "noisycluster/errors.hpp"
#include "noisycluster/harness.hpp"
#include "noisycluster/oracle.hpp"
#include "noisycluster/pair_rng.hpp"

using namespace noisycluster;

namespace {

WeightedPairGraph graph_from_oracle(Oracle& o, const std::vector<int>& vertices) {
  WeightedPairGraph g(vertices);
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      g.set_weight(vertices[i], vertices[j], o.query(vertices[i], vertices[j]));
  return g;
}

}  // namespace

TEST_CASE("threshold formulas match their pinned evaluations") {
  // p=0, N=100, ln n = 1: T = 6*10.
  CHECK(threshold_T(123.0, 100.0, std::exp(1.0), 0.0) == doctest::Approx(60.0));
  CHECK(threshold_T(1024.0, 1024.0, 1024.0, 0.1) ==
        doctest::Approx(734.26452345619824).epsilon(1e-12));
  // Linearity in a: T(2a) - T(a) = p*a.
  CHECK(threshold_T(2048.0, 1024.0, 1024.0, 0.1) -
            threshold_T(1024.0, 1024.0, 1024.0, 0.1) ==
        doctest::Approx(102.4).epsilon(1e-12));

  CHECK(threshold_theta(0.0, 100.0, std::exp(1.0), 0.0) == doctest::Approx(20.0));
  CHECK(threshold_theta(1024.0, 1024.0, 1024.0, 0.1) ==
        doctest::Approx(352.81720625498619).epsilon(1e-12));
  for (double p : {0.0, 0.1, 0.3, 0.45})
    CHECK(threshold_theta(0.0, 64.0, 50.0, p) ==
          doctest::Approx(2.0 * std::sqrt(64.0 * std::log(50.0))));
}

TEST_CASE("EffParams keeps the emission-floor identity") {
  for (double alpha : {1.0, 0.3, 0.05, 0.01}) {
    for (int k : {1, 2, 5}) {
      const EffParams params = EffParams::known_k(500.0, k, 0.1, alpha);
      const double lhs = 8.0 * std::sqrt(params.threshold_n * std::log(500.0)) /
                         ((1.0 - 0.2) * (1.0 - 0.2));
      CHECK(lhs == doctest::Approx(params.min_cluster_out).epsilon(1e-9));
      CHECK(params.batch_size >= params.min_cluster_out);
    }
  }
}

TEST_CASE("noiseless batch clustering separates the truth traces") {
  const int n = 60;
  const Clustering truth = gen_ground_truth(n, 3, Shape::balanced(), 21);
  Oracle o(truth, 0.0, 0.0, 21);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const WeightedPairGraph g = graph_from_oracle(o, all);

  const EffParams params = EffParams::from_min_cluster(10.0, n, 3, n, 0.0);
  const auto groups = cluster_batch_by_symdiff(g, params, n, 0.0);
  REQUIRE(groups.size() == 3);
  CHECK(partitions_equal(clustering_from_blocks(n, groups), truth));
}

TEST_CASE("a single cluster covering the batch is returned whole") {
  // Truth: one cluster over the whole sample; tuned so min_cluster_out = |V'|.
  const int n = 150;
  const int batch = 120;
  int successes = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Clustering truth = partition_from_labels(std::vector<int>(n, 0));
    Oracle o(truth, 0.1, 0.1, seed);
    std::vector<int> sample(batch);
    for (int i = 0; i < batch; ++i) sample[static_cast<std::size_t>(i)] = i;
    const WeightedPairGraph g = graph_from_oracle(o, sample);
    const EffParams params =
        EffParams::from_min_cluster(static_cast<double>(batch), batch, 3, n, 0.1);
    const auto groups = cluster_batch_by_symdiff(g, params, n, 0.1);
    if (groups.size() == 1 && static_cast<int>(groups[0].size()) == batch) ++successes;
  }
  CHECK(successes >= 45);  // >= 90% of seeds
}

TEST_CASE("an empty candidate set yields no groups") {
  // Absurdly large threshold_n forces T above any degree.
  const int n = 30;
  const Clustering truth = gen_ground_truth(n, 2, Shape::balanced(), 3);
  Oracle o(truth, 0.1, 0.1, 4);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const WeightedPairGraph g = graph_from_oracle(o, all);
  EffParams params = EffParams::from_min_cluster(5.0, n, 3, n, 0.1);
  params.threshold_n = 1e6;
  CHECK(cluster_batch_by_symdiff(g, params, n, 0.1).empty());
}

TEST_CASE("batch clustering validates inputs") {
  const Clustering truth = gen_ground_truth(10, 2, Shape::balanced(), 5);
  Oracle o(truth, 0.1, 0.1, 5);
  std::vector<int> all(10);
  for (int i = 0; i < 10; ++i) all[static_cast<std::size_t>(i)] = i;
  const WeightedPairGraph g = graph_from_oracle(o, all);
  EffParams params = EffParams::from_min_cluster(3.0, 4, 2, 10.0, 0.1);
  CHECK_THROWS_AS(cluster_batch_by_symdiff(g, params, 10.0, 0.1), InvalidInput);

  WeightedPairGraph incomplete(std::vector<int>{0, 1, 2});
  incomplete.set_weight(0, 1, 1);
  params.batch_size = 10;
  CHECK_THROWS_AS(cluster_batch_by_symdiff(incomplete, params, 10.0, 0.1),
                  IncompleteGraph);
}

TEST_CASE("noiseless known-k run recovers a balanced truth exactly") {
  AlgoConfig cfg;
  cfg.alpha = 0.0127;  // emission floor ~10 on n=60, k=3
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Clustering truth = gen_ground_truth(60, 3, Shape::balanced(), seed);
    Oracle o(truth, 0.0, 0.0, seed);
    const RunResult result = run_efficient_known_k(o, 60, 3, 0.0, cfg);
    CHECK(partitions_equal(result.clustering, truth));
  }
}

TEST_CASE("all-singleton truth aborts into unclustered singletons") {
  AlgoConfig cfg;
  cfg.alpha = 0.05;
  const Clustering truth = gen_ground_truth(50, 50, Shape::balanced(), 1);
  Oracle o(truth, 0.1, 0.1, 2);
  const RunResult result = run_efficient_known_k(o, 50, 50, 0.1, cfg);
  CHECK(result.recovered_large.empty());
  CHECK(result.clustering.k() == 50);
}

TEST_CASE("noiseless unknown-k run doubles up to a working guess") {
  AlgoConfig cfg;
  cfg.alpha = 0.0127;
  const Clustering truth = gen_ground_truth(60, 3, Shape::balanced(), 11);
  Oracle o(truth, 0.0, 0.0, 11);
  const RunResult result = run_efficient_unknown_k(o, 60, 0.0, cfg);
  CHECK(partitions_equal(result.clustering, truth));
  CHECK(result.doubling_rounds <= 3);  // ceil(log2 3) + 1
}

TEST_CASE("noiseless singleton-only truth stops at the whole-graph safeguard") {
  AlgoConfig cfg;
  cfg.alpha = 1.0;
  const int n = 50;
  const Clustering truth = gen_ground_truth(n, n, Shape::balanced(), 1);
  Oracle o(truth, 0.0, 0.0, 9);
  const RunResult result = run_efficient_unknown_k(o, n, 0.0, cfg);
  CHECK(result.clustering.k() == n);  // all singletons
  bool stopped = false;
  for (const auto& event : result.phase_log)
    if (event.event.rfind("stop_whole_graph", 0) == 0) stopped = true;
  CHECK(stopped);
}

TEST_CASE("cluster size estimate is near-unbiased") {
  // v inside a planted cluster of size s within a fully queried sample of
  // size m: E[C_hat] = s + p/(1-2p) with the self-inclusive neighborhood.
  const int m = 1000;
  const int s = 300;
  const double p = 0.1;
  std::vector<int> labels(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) labels[static_cast<std::size_t>(i)] = i < s ? 0 : 1 + i;
  const Clustering truth = partition_from_labels(labels);

  const int seeds = 10000;
  double sum = 0.0;
  for (int seed = 1; seed <= seeds; ++seed) {
    Oracle o(truth, p, p, static_cast<std::uint64_t>(seed));
    int deg = 1;  // v counts itself
    for (int u = 1; u < m; ++u) deg += o.query(0, u) > 0;
    sum += cluster_size_estimate(deg, m, p);
  }
  const double mean = sum / seeds;
  const double sigma_single =
      std::sqrt((m - 1) * p * (1.0 - p)) / (1.0 - 2.0 * p);
  const double band = 3.0 * sigma_single / std::sqrt(static_cast<double>(seeds));
  CHECK(std::abs(mean - s) <= band);
}

TEST_CASE("batch clustering stays within cubic comparison work") {
  const int n = 300;
  const Clustering truth = gen_ground_truth(n, 3, Shape::balanced(), 8);
  Oracle o(truth, 0.1, 0.1, 8);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  const WeightedPairGraph g = graph_from_oracle(o, all);
  const EffParams params = EffParams::from_min_cluster(60.0, n, 15, n, 0.1);
  SymdiffStats stats;
  cluster_batch_by_symdiff(g, params, n, 0.1, &stats);
  CHECK(stats.comparisons > 0);
  CHECK(stats.comparisons <= static_cast<long long>(n) * n * n);
}

TEST_CASE("a giant cluster triggers the estimate early and gets recovered") {
  // One cluster of n/2 plus four small ones; the size estimate must fire in
  // the first guesses and the giant cluster must come back verbatim.
  const int n = 200;
  const Shape shape = Shape::with_sizes({100, 25, 25, 25, 25});
  AlgoConfig cfg;
  cfg.alpha = 0.02;
  int good = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Clustering truth = gen_ground_truth(n, 5, shape, seed);
    Oracle o(truth, 0.1, 0.1, seed);
    const RunResult result = run_efficient_unknown_k(o, n, 0.1, cfg);
    const bool rounds_ok = result.doubling_rounds <= 4;  // ceil(log2 5) + 1
    bool giant_back = false;
    for (const auto& cluster : result.recovered_large) {
      if (cluster.size() != 100) continue;
      bool verbatim = true;
      for (std::size_t i = 1; i < cluster.size() && verbatim; ++i)
        verbatim = truth.same_cluster(cluster[0], cluster[i]);
      giant_back = giant_back || (verbatim && truth.cluster_size(truth.label(cluster[0])) == 100);
    }
    good += rounds_ok && giant_back;
  }
  CHECK(good >= 45);
}

TEST_CASE("residual ML fallback finishes small leftovers exactly") {
  // Truth below the emission floor: the batch step aborts, and with the
  // fallback enabled the fully queried residual goes through the exact ML
  // estimate instead of staying unclustered.
  AlgoConfig cfg;
  cfg.alpha = 1.0;  // emission floor far above every cluster
  cfg.efficient_residual_ml = true;
  cfg.ml_cap = 12;
  const Clustering truth = gen_ground_truth(10, 3, Shape::balanced(), 6);
  Oracle o(truth, 0.0, 0.0, 6);
  const RunResult result = run_efficient_known_k(o, 10, 3, 0.0, cfg);
  CHECK(result.recovered_large.empty());
  CHECK(partitions_equal(result.clustering, truth));
  bool ml_logged = false;
  for (const auto& e : result.phase_log)
    if (e.event.rfind("residual_ml", 0) == 0) ml_logged = true;
  CHECK(ml_logged);

  // Without the fallback the same run leaves singletons.
  cfg.efficient_residual_ml = false;
  Oracle o2(truth, 0.0, 0.0, 6);
  const RunResult plain = run_efficient_known_k(o2, 10, 3, 0.0, cfg);
  CHECK(plain.clustering.k() == 10);
}

TEST_CASE("unknown-k runs are deterministic given the oracle") {
  AlgoConfig cfg;
  cfg.alpha = 0.02;
  const Clustering truth = gen_ground_truth(120, 3, Shape::balanced(), 6);
  Oracle a(truth, 0.1, 0.1, 44);
  Oracle b(truth, 0.1, 0.1, 44);
  const RunResult ra = run_efficient_unknown_k(a, 120, 0.1, cfg);
  const RunResult rb = run_efficient_unknown_k(b, 120, 0.1, cfg);
  CHECK(ra.clustering == rb.clustering);
  CHECK(ra.stats.distinct_pairs == rb.stats.distinct_pairs);
  CHECK(ra.doubling_rounds == rb.doubling_rounds);
}
