#include "noisycluster/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "noisycluster/bounds.hpp"
#include "noisycluster/efficient.hpp"
#include "noisycluster/errors.hpp"
#include "noisycluster/info_optimal.hpp"
#include "noisycluster/ml_exact.hpp"
#include "noisycluster/pair_rng.hpp"

namespace noisycluster {

using nlohmann::json;

std::string algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::info_optimal: return "info_optimal";
    case Algorithm::efficient_known_k: return "efficient_known_k";
    case Algorithm::efficient_unknown_k: return "efficient_unknown_k";
    case Algorithm::nonadaptive_k2: return "nonadaptive_k2";
    case Algorithm::nonadaptive_general: return "nonadaptive_general";
    case Algorithm::full_query_ml: return "full_query_ml";
  }
  throw InvalidInput("algorithm_name: unknown value");
}

Algorithm algorithm_from_name(const std::string& name) {
  for (Algorithm a : {Algorithm::info_optimal, Algorithm::efficient_known_k,
                      Algorithm::efficient_unknown_k, Algorithm::nonadaptive_k2,
                      Algorithm::nonadaptive_general, Algorithm::full_query_ml}) {
    if (algorithm_name(a) == name) return a;
  }
  throw InvalidInput("unknown algorithm: " + name);
}

Shape Shape::with_ratio(double r) {
  if (!(r >= 1.0)) throw InvalidInput("shape: ratio must be >= 1");
  Shape s;
  s.kind = Kind::ratio;
  s.ratio = r;
  return s;
}

Shape Shape::with_sizes(std::vector<int> sizes) {
  Shape s;
  s.kind = Kind::explicit_sizes;
  s.sizes = std::move(sizes);
  return s;
}

Shape Shape::parse(const std::string& text) {
  if (text == "balanced") return balanced();
  if (text.rfind("ratio:", 0) == 0) return with_ratio(std::stod(text.substr(6)));
  if (text.rfind("sizes:", 0) == 0) {
    std::vector<int> sizes;
    std::stringstream ss(text.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(std::stoi(item));
    return with_sizes(std::move(sizes));
  }
  throw InvalidInput("shape: expected balanced, ratio:R or sizes:a,b,...");
}

std::string Shape::to_string() const {
  switch (kind) {
    case Kind::balanced: return "balanced";
    case Kind::ratio: {
      std::ostringstream out;
      out << "ratio:" << ratio;
      return out.str();
    }
    case Kind::explicit_sizes: {
      std::ostringstream out;
      out << "sizes:";
      for (std::size_t i = 0; i < sizes.size(); ++i)
        out << (i ? "," : "") << sizes[i];
      return out.str();
    }
  }
  throw InvalidInput("shape: unknown kind");
}

namespace {

std::vector<int> shape_sizes(int n, int k, const Shape& shape) {
  if (k < 1 || k > n) throw InvalidInput("gen_ground_truth: need 1 <= k <= n");
  std::vector<int> sizes;
  switch (shape.kind) {
    case Shape::Kind::balanced: {
      const int base = n / k;
      const int extra = n % k;
      for (int i = 0; i < k; ++i) sizes.push_back(base + (i < extra ? 1 : 0));
      break;
    }
    case Shape::Kind::ratio: {
      // One max-tier cluster, k-1 min-tier clusters: s + (k-1+R-1)... solve
      // small = n / (R + k - 1), big = n - (k-1)*small.
      const double small_real = n / (shape.ratio + k - 1);
      int small = std::max(1, static_cast<int>(std::llround(small_real)));
      int big = n - (k - 1) * small;
      if (big < small) throw InvalidInput("gen_ground_truth: infeasible ratio shape");
      sizes.push_back(big);
      for (int i = 1; i < k; ++i) sizes.push_back(small);
      break;
    }
    case Shape::Kind::explicit_sizes: {
      sizes = shape.sizes;
      if (static_cast<int>(sizes.size()) != k)
        throw InvalidInput("gen_ground_truth: sizes count != k");
      long long total = 0;
      for (int s : sizes) {
        if (s < 1) throw InvalidInput("gen_ground_truth: cluster size < 1");
        total += s;
      }
      if (total != n) throw InvalidInput("gen_ground_truth: sizes do not sum to n");
      break;
    }
  }
  return sizes;
}

}  // namespace

Clustering gen_ground_truth(int n, int k, const Shape& shape, std::uint64_t seed) {
  const std::vector<int> sizes = shape_sizes(n, k, shape);

  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  SplitMix64 rng(derive_seed(seed, 0x67656eULL));
  for (int i = n - 1; i > 0; --i) {
    const std::size_t j =
        static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }

  std::vector<int> labels(static_cast<std::size_t>(n));
  int pos = 0;
  for (int c = 0; c < k; ++c)
    for (int j = 0; j < sizes[static_cast<std::size_t>(c)]; ++j)
      labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(pos++)])] = c;
  return Clustering(labels);
}

double true_size_ratio(const Clustering& truth) {
  return static_cast<double>(truth.max_cluster_size()) /
         static_cast<double>(truth.min_cluster_size());
}

CompareMetrics compare(const Clustering& truth, const Clustering& estimate,
                       int min_size) {
  if (truth.n() != estimate.n()) throw InvalidInput("compare: n mismatch");
  CompareMetrics metrics;
  metrics.exact_match = partitions_equal(truth, estimate);

  // Verbatim recovery of large truth clusters.
  std::map<std::vector<int>, int> estimate_blocks;
  for (const auto& block : estimate.clusters()) estimate_blocks[block] = 1;
  for (const auto& block : truth.clusters())
    if (static_cast<int>(block.size()) >= min_size && estimate_blocks.count(block))
      ++metrics.recovered_large;

  // Pairwise disagreement through the contingency table.
  const long long n = truth.n();
  std::map<std::pair<int, int>, long long> joint;
  for (int v = 0; v < n; ++v) ++joint[{truth.label(v), estimate.label(v)}];
  auto choose2 = [](long long x) { return x * (x - 1) / 2; };
  long long same_truth = 0, same_est = 0, same_both = 0;
  for (const auto& c : truth.clusters()) same_truth += choose2(static_cast<long long>(c.size()));
  for (const auto& c : estimate.clusters()) same_est += choose2(static_cast<long long>(c.size()));
  for (const auto& [cell, count] : joint) same_both += choose2(count);
  const long long wrong = (same_truth - same_both) + (same_est - same_both);
  const long long total = choose2(n);
  metrics.pairwise_error = total > 0 ? static_cast<double>(wrong) / static_cast<double>(total) : 0.0;
  return metrics;
}

TrialRecord run_trial_detailed(const Clustering& truth, Algorithm algorithm,
                               double p, double q, double alpha,
                               std::uint64_t seed, const TrialOptions& options,
                               RunResult* out_result) {
  const int n = truth.n();
  Oracle oracle(truth, p, q, seed);
  AlgoConfig cfg = options.cfg;
  cfg.alpha = alpha;

  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  switch (algorithm) {
    case Algorithm::info_optimal:
      result = run_info_optimal(oracle, n, p, cfg);
      break;
    case Algorithm::efficient_known_k:
      result = run_efficient_known_k(oracle, n, truth.k(), p, cfg);
      break;
    case Algorithm::efficient_unknown_k:
      result = run_efficient_unknown_k(oracle, n, p, cfg);
      break;
    case Algorithm::nonadaptive_k2:
      result = run_nonadaptive_k2(oracle, n, p, cfg);
      break;
    case Algorithm::nonadaptive_general: {
      const double ratio = options.ratio.value_or(true_size_ratio(truth));
      result = run_nonadaptive_general(oracle, n, truth.k(), ratio, p,
                                       options.nonadaptive_mode, cfg);
      break;
    }
    case Algorithm::full_query_ml: {
      // Reference estimate with every pair queried; small n only.
      WeightedPairGraph g;
      for (int v = 0; v < n; ++v) g.add_vertex(v);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.set_weight(u, v, oracle.query(u, v));
      result.clustering = clustering_from_blocks(
          n, to_global_blocks(g, ml_partition_exact(g, cfg.ml_cap)));
      result.stats = oracle.stats();
      result.min_recoverable = 1;
      break;
    }
  }
  const auto stop = std::chrono::steady_clock::now();

  TrialRecord record;
  record.n = n;
  record.k = truth.k();
  record.p = p;
  record.q = q;
  record.algorithm = algorithm;
  record.alpha = alpha;
  record.seed = seed;
  record.distinct_pairs = result.stats.distinct_pairs;
  record.total_calls = result.stats.total_calls;
  const CompareMetrics metrics =
      compare(truth, result.clustering, result.min_recoverable);
  record.exact_match = metrics.exact_match;
  record.recovered_large = metrics.recovered_large;
  record.pairwise_error = metrics.pairwise_error;
  record.wall_time_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  record.doubling_rounds = result.doubling_rounds;
  if (out_result) *out_result = std::move(result);
  return record;
}

TrialRecord run_trial(const Clustering& truth, Algorithm algorithm, double p,
                      double q, double alpha, std::uint64_t seed,
                      const TrialOptions& options) {
  return run_trial_detailed(truth, algorithm, p, q, alpha, seed, options, nullptr);
}

namespace {

struct Cell {
  int n, k;
  double p, alpha;
  Algorithm algorithm;
};

}  // namespace

std::vector<TrialRecord> sweep(const SweepSpec& spec, int threads) {
  if (spec.ns.empty() || spec.ks.empty() || spec.ps.empty() ||
      spec.algorithms.empty() || spec.alphas.empty() || spec.trials < 1)
    throw InvalidInput("sweep: empty grid");

  std::vector<Cell> cells;
  for (int n : spec.ns)
    for (int k : spec.ks)
      for (double p : spec.ps)
        for (Algorithm a : spec.algorithms)
          for (double alpha : spec.alphas) cells.push_back({n, k, p, alpha, a});

  struct Task {
    std::size_t cell;
    int trial;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (int t = 0; t < spec.trials; ++t) tasks.push_back({c, t});

  std::vector<TrialRecord> records(tasks.size());
  if (threads <= 0)
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  std::atomic<std::size_t> cursor{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size() || failed.load()) return;
      try {
        const Cell& cell = cells[tasks[i].cell];
        const std::uint64_t seed = derive_seed(
            spec.base_seed, tasks[i].cell, static_cast<std::uint64_t>(tasks[i].trial));
        const Clustering truth =
            gen_ground_truth(cell.n, cell.k, spec.shape, seed);
        records[i] = run_trial(truth, cell.algorithm, cell.p, cell.p, cell.alpha,
                               seed, spec.options);
      } catch (...) {
        const std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return records;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<TrialRecord>& records) {
  out << "schema,n,k,p,q,algorithm,alpha,seed,"
         "distinct_pairs,total_calls,exact_match,recovered_large,"
         "pairwise_error,doubling_rounds";
  if (spec.bound_columns) out << ",adaptive_bound_js,nonadaptive_bound";
  out << '\n';
  std::ostringstream row;
  row.precision(12);
  for (const auto& r : records) {
    row.str("");
    row << "noisycluster-sweep-v1," << r.n << ',' << r.k << ',' << r.p << ',' << r.q << ','
        << algorithm_name(r.algorithm) << ',' << r.alpha << ',' << r.seed << ','
        << r.distinct_pairs << ',' << r.total_calls << ','
        << (r.exact_match ? 1 : 0) << ',' << r.recovered_large << ','
        << r.pairwise_error << ',' << r.doubling_rounds;
    if (spec.bound_columns) {
      const AdaptiveBound ab = adaptive_query_lower_bound(r.n, r.k, r.p, 1.0 - r.p);
      const double nb = nonadaptive_query_lower_bound(r.n, r.k, r.p, 1.0 - r.p);
      row << ',' << ab.js_bound << ',' << nb;
    }
    out << row.str() << '\n';
  }
}

std::string clustering_to_json(const Clustering& c) {
  // A clustering is its label sequence.
  return json(c.labels()).dump() + "\n";
}

Clustering clustering_from_json_text(const std::string& text) {
  json j = json::parse(text);
  std::vector<int> labels;
  if (j.is_array()) {
    labels = j.get<std::vector<int>>();
  } else {
    labels = j.at("labels").get<std::vector<int>>();
  }
  return Clustering(labels);
}

std::string trial_record_to_json(const TrialRecord& r) {
  json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["p"] = r.p;
  j["q"] = r.q;
  j["algorithm"] = algorithm_name(r.algorithm);
  j["alpha"] = r.alpha;
  j["seed"] = r.seed;
  j["distinct_pairs"] = r.distinct_pairs;
  j["total_calls"] = r.total_calls;
  j["exact_match"] = r.exact_match;
  j["recovered_large"] = r.recovered_large;
  j["pairwise_error"] = r.pairwise_error;
  j["wall_time_ms"] = r.wall_time_ms;
  j["doubling_rounds"] = r.doubling_rounds;
  return j.dump(2) + "\n";
}

std::string phase_log_to_json(const RunResult& result) {
  json events = json::array();
  for (const auto& e : result.phase_log)
    events.push_back({{"phase", e.phase}, {"event", e.event}});
  json j;
  j["phase_log"] = events;
  j["doubling_rounds"] = result.doubling_rounds;
  j["min_recoverable"] = result.min_recoverable;
  j["recovered_large_clusters"] = result.recovered_large.size();
  j["residual_clusters"] = result.residual.size();
  return j.dump(2) + "\n";
}

SweepSpec sweep_spec_from_json_text(const std::string& text) {
  json j = json::parse(text);
  SweepSpec spec;
  spec.ns = j.at("n").get<std::vector<int>>();
  spec.ks = j.at("k").get<std::vector<int>>();
  spec.ps = j.at("p").get<std::vector<double>>();
  for (const auto& name : j.at("algorithms"))
    spec.algorithms.push_back(algorithm_from_name(name.get<std::string>()));
  spec.alphas = j.at("alphas").get<std::vector<double>>();
  spec.trials = j.at("trials").get<int>();
  spec.base_seed = j.value("base_seed", std::uint64_t{1});
  spec.shape = Shape::parse(j.value("shape", std::string("balanced")));
  spec.bound_columns = j.value("bound_columns", false);
  if (j.contains("nonadaptive_mode")) {
    const std::string mode = j["nonadaptive_mode"].get<std::string>();
    if (mode == "efficient") {
      spec.options.nonadaptive_mode = NonadaptiveMode::efficient;
    } else if (mode == "info_optimal") {
      spec.options.nonadaptive_mode = NonadaptiveMode::info_optimal;
    } else {
      throw InvalidInput("sweep spec: unknown nonadaptive_mode " + mode);
    }
  }
  if (j.contains("ml_cap")) spec.options.cfg.ml_cap = j["ml_cap"].get<int>();
  if (j.contains("subgraph_cap"))
    spec.options.cfg.subgraph_cap = j["subgraph_cap"].get<int>();
  if (j.contains("residual_singletons"))
    spec.options.cfg.residual_singletons = j["residual_singletons"].get<bool>();
  if (j.contains("efficient_residual_ml"))
    spec.options.cfg.efficient_residual_ml = j["efficient_residual_ml"].get<bool>();
  return spec;
}

}  // namespace noisycluster
