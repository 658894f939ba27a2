#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "noisycluster/clustering.hpp"
#include "noisycluster/config.hpp"
#include "noisycluster/nonadaptive.hpp"
#include "noisycluster/run_result.hpp"

namespace noisycluster {

enum class Algorithm {
  info_optimal,
  efficient_known_k,
  efficient_unknown_k,
  nonadaptive_k2,
  nonadaptive_general,
  full_query_ml,
};

std::string algorithm_name(Algorithm a);
Algorithm algorithm_from_name(const std::string& name);

struct Shape {
  enum class Kind { balanced, ratio, explicit_sizes };
  Kind kind = Kind::balanced;
  double ratio = 1.0;          // ratio shape: max/min cluster size
  std::vector<int> sizes;      // explicit shape

  static Shape balanced() { return {}; }
  static Shape with_ratio(double r);
  static Shape with_sizes(std::vector<int> sizes);
  // Parses "balanced", "ratio:R" or "sizes:a,b,...".
  static Shape parse(const std::string& text);
  std::string to_string() const;
};

// Balanced: sizes differ by at most one. Ratio: one max-tier cluster and
// k-1 min-tier clusters with max/min as close to R as rounding allows.
// Element-to-cluster assignment is a seeded permutation, so ids do not
// encode cluster structure.
Clustering gen_ground_truth(int n, int k, const Shape& shape, std::uint64_t seed);

double true_size_ratio(const Clustering& truth);

struct CompareMetrics {
  bool exact_match = false;
  int recovered_large = 0;     // truth clusters >= min_size present verbatim
  double pairwise_error = 0.0; // fraction of pairs with the wrong relation
};

CompareMetrics compare(const Clustering& truth, const Clustering& estimate,
                       int min_size = 1);

struct TrialRecord {
  int n = 0;
  int k = 0;
  double p = 0.0;
  double q = 0.0;
  Algorithm algorithm = Algorithm::full_query_ml;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::int64_t distinct_pairs = 0;
  std::int64_t total_calls = 0;
  bool exact_match = false;
  int recovered_large = 0;
  double pairwise_error = 0.0;
  double wall_time_ms = 0.0;
  int doubling_rounds = 0;
};

struct TrialOptions {
  AlgoConfig cfg;  // cfg.alpha is overwritten by the trial's alpha
  NonadaptiveMode nonadaptive_mode = NonadaptiveMode::efficient;
  std::optional<double> ratio;  // nonadaptive_general; defaults to the truth's
};

TrialRecord run_trial(const Clustering& truth, Algorithm algorithm, double p,
                      double q, double alpha, std::uint64_t seed,
                      const TrialOptions& options = {});

// Like run_trial but also hands back the full run output.
TrialRecord run_trial_detailed(const Clustering& truth, Algorithm algorithm,
                               double p, double q, double alpha,
                               std::uint64_t seed, const TrialOptions& options,
                               RunResult* out_result);

struct SweepSpec {
  std::vector<int> ns;
  std::vector<int> ks;
  std::vector<double> ps;
  std::vector<Algorithm> algorithms;
  std::vector<double> alphas;
  int trials = 1;
  std::uint64_t base_seed = 1;
  Shape shape;
  TrialOptions options;
  bool bound_columns = false;  // append divergence reference values per cell
};

// One record per (cell, trial); cells in grid order, trials by index. Seeds
// derive from (base_seed, cell, trial) so adding trials or cells never
// perturbs earlier records. Trials run in parallel; output order is
// deterministic.
std::vector<TrialRecord> sweep(const SweepSpec& spec, int threads = 0);

// CSV with a versioned schema tag. Timing is intentionally excluded so a
// rerun with the same spec is byte-identical.
void write_sweep_csv(std::ostream& out, const SweepSpec& spec,
                     const std::vector<TrialRecord>& records);

// JSON serialization for the CLI.
std::string clustering_to_json(const Clustering& c);
Clustering clustering_from_json_text(const std::string& text);
std::string trial_record_to_json(const TrialRecord& record);
std::string phase_log_to_json(const RunResult& result);
SweepSpec sweep_spec_from_json_text(const std::string& text);

}  // namespace noisycluster
