#include <benchmark/benchmark.h>

#include <vector>

#include "noisycluster/efficient.hpp"
#include "noisycluster/harness.hpp"
#include "noisycluster/ml_exact.hpp"
#include "noisycluster/oracle.hpp"

using namespace noisycluster;

namespace {

// Planted three-cluster instance observed through the noisy oracle.
WeightedPairGraph planted_instance(int m, double p, std::uint64_t seed) {
  const Clustering truth = gen_ground_truth(m, 3, Shape::balanced(), seed);
  Oracle o(truth, p, p, seed);
  std::vector<int> ids(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) ids[static_cast<std::size_t>(i)] = i;
  WeightedPairGraph g(ids);
  for (int u = 0; u < m; ++u)
    for (int v = u + 1; v < m; ++v) g.set_weight(u, v, o.query(u, v));
  return g;
}

void BM_HeaviestSubgraphBnB(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const WeightedPairGraph g = planted_instance(m, 0.1, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(heaviest_subgraph(g, m));
  }
}
BENCHMARK(BM_HeaviestSubgraphBnB)->Arg(12)->Arg(16)->Arg(24)->Arg(32)->Arg(48)->Arg(64);

void BM_HeaviestSubgraphEnum(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const WeightedPairGraph g = planted_instance(m, 0.1, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(heaviest_subgraph_enumerate(g, m));
  }
}
BENCHMARK(BM_HeaviestSubgraphEnum)->Arg(12)->Arg(16)->Arg(20);

void BM_MlPartitionExact(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const WeightedPairGraph g = planted_instance(m, 0.2, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ml_partition_exact(g, m));
  }
}
BENCHMARK(BM_MlPartitionExact)->Arg(8)->Arg(10)->Arg(12);

void BM_SymdiffBatch(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const WeightedPairGraph g = planted_instance(m, 0.1, 3);
  const EffParams params = EffParams::from_min_cluster(m / 6.0, m, 10, m, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cluster_batch_by_symdiff(g, params, m, 0.1));
  }
}
BENCHMARK(BM_SymdiffBatch)->Arg(128)->Arg(256)->Arg(512);

void BM_OracleQuery(benchmark::State& state) {
  const int n = 10000;
  const Clustering truth = gen_ground_truth(n, 10, Shape::balanced(), 5);
  Oracle o(truth, 0.1, 0.1, 5);
  int u = 0, v = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(o.query(u, v));
    v = (v + 7919) % n;
    if (v == u) v = (v + 1) % n;
    u = (u + 13) % n;
    if (u == v) u = (u + 1) % n;
  }
}
BENCHMARK(BM_OracleQuery);

}  // namespace

BENCHMARK_MAIN();
