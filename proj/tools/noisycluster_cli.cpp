// Command-line harness: ground-truth generation, single trials, sweeps,
// divergence reference values and non-adaptive query-plan dumps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "noisycluster/bounds.hpp"
#include "noisycluster/errors.hpp"
#include "noisycluster/harness.hpp"

namespace nc = noisycluster;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nc::InvalidInput("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw nc::InvalidInput("cannot write " + path);
  out << content;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"clustering with a noisy pairwise oracle"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a ground-truth clustering");
  int gen_n = 0, gen_k = 0;
  std::string gen_shape = "balanced", gen_out;
  std::uint64_t gen_seed = 1;
  gen->add_option("--n", gen_n, "number of elements")->required();
  gen->add_option("--k", gen_k, "number of clusters")->required();
  gen->add_option("--shape", gen_shape, "balanced | ratio:R | sizes:a,b,...");
  gen->add_option("--seed", gen_seed, "assignment permutation seed");
  gen->add_option("--out", gen_out, "output JSON path (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "run one algorithm trial");
  std::string run_truth, run_algo, run_mode = "efficient", run_out;
  double run_p = 0.0, run_q = -1.0, run_alpha = 1.0, run_ratio = -1.0;
  std::uint64_t run_seed = 1;
  int run_ml_cap = nc::kDefaultMlCap, run_subgraph_cap = nc::kDefaultSubgraphCap;
  bool run_residual_singletons = false, run_residual_ml = false;
  run->add_option("--truth", run_truth, "truth JSON path")->required();
  run->add_option("--algo", run_algo,
                  "info_optimal | efficient_known_k | efficient_unknown_k | "
                  "nonadaptive_k2 | nonadaptive_general | full_query_ml")
      ->required();
  run->add_option("--p", run_p, "intra-cluster error probability")->required();
  run->add_option("--q", run_q, "cross-cluster +1 probability (default p)");
  run->add_option("--alpha", run_alpha, "constant multiplier");
  run->add_option("--seed", run_seed, "oracle seed");
  run->add_option("--mode", run_mode, "nonadaptive_general: efficient | info_optimal");
  run->add_option("--ratio", run_ratio,
                  "nonadaptive_general: max/min cluster size (default: from truth)");
  run->add_option("--ml-cap", run_ml_cap, "set-partition solver cap");
  run->add_option("--subgraph-cap", run_subgraph_cap, "heaviest-subgraph solver cap");
  run->add_flag("--residual-singletons", run_residual_singletons,
                "fall back to singletons when the residual exceeds the ml cap");
  run->add_flag("--residual-ml", run_residual_ml,
                "exact ML on the efficient algorithms' residual when it fits");
  run->add_option("--out", run_out, "output record JSON path (default stdout)");
  std::string run_log;
  run->add_option("--log", run_log, "write the phase log as JSON to this path");

  // sweep
  auto* sw = app.add_subcommand("sweep", "run a seeded experiment grid");
  std::string sw_spec, sw_out;
  int sw_threads = 0;
  sw->add_option("--spec", sw_spec, "sweep spec JSON path")->required();
  sw->add_option("--out", sw_out, "output CSV path")->required();
  sw->add_option("--threads", sw_threads, "worker threads (default: hardware)");

  // bound
  auto* bound = app.add_subcommand("bound", "print divergence reference values");
  double b_n = 0, b_k = 0, b_p = 0, b_q = 0;
  std::string b_sbm;
  bound->add_option("--n", b_n)->required();
  bound->add_option("--k", b_k)->required();
  bound->add_option("--p", b_p)->required();
  bound->add_option("--q", b_q)->required();
  bound->add_option("--sbm", b_sbm, "a,b,Q: also evaluate the SBM condition");

  // dryrun-pairs
  auto* dry = app.add_subcommand(
      "dryrun-pairs", "emit a non-adaptive query plan without an oracle");
  std::string dry_algo, dry_mode = "efficient", dry_out;
  int dry_n = 0, dry_k = 2;
  double dry_p = 0.0, dry_alpha = 1.0, dry_ratio = 1.0;
  std::uint64_t dry_seed = 1;
  dry->add_option("--algo", dry_algo, "nonadaptive_k2 | nonadaptive_general")
      ->required();
  dry->add_option("--n", dry_n)->required();
  dry->add_option("--p", dry_p)->required();
  dry->add_option("--k", dry_k, "nonadaptive_general only");
  dry->add_option("--ratio", dry_ratio, "nonadaptive_general only");
  dry->add_option("--mode", dry_mode, "efficient | info_optimal");
  dry->add_option("--alpha", dry_alpha);
  dry->add_option("--seed", dry_seed);
  dry->add_option("--out", dry_out, "output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (*gen) {
    const nc::Clustering truth =
        nc::gen_ground_truth(gen_n, gen_k, nc::Shape::parse(gen_shape), gen_seed);
    const std::string text = nc::clustering_to_json(truth);
    if (gen_out.empty())
      std::cout << text;
    else
      write_file(gen_out, text);
    return 0;
  }

  if (*run) {
    const nc::Clustering truth = nc::clustering_from_json_text(read_file(run_truth));
    nc::TrialOptions options;
    options.cfg.ml_cap = run_ml_cap;
    options.cfg.subgraph_cap = run_subgraph_cap;
    options.cfg.residual_singletons = run_residual_singletons;
    options.cfg.efficient_residual_ml = run_residual_ml;
    if (run_mode == "efficient") {
      options.nonadaptive_mode = nc::NonadaptiveMode::efficient;
    } else if (run_mode == "info_optimal") {
      options.nonadaptive_mode = nc::NonadaptiveMode::info_optimal;
    } else {
      throw nc::InvalidInput("run: unknown --mode " + run_mode);
    }
    if (run_ratio > 0) options.ratio = run_ratio;
    if (run_q < 0) run_q = run_p;
    nc::RunResult detail;
    const nc::TrialRecord record =
        nc::run_trial_detailed(truth, nc::algorithm_from_name(run_algo), run_p,
                               run_q, run_alpha, run_seed, options, &detail);
    if (!run_log.empty()) write_file(run_log, nc::phase_log_to_json(detail));
    const std::string text = nc::trial_record_to_json(record);
    if (run_out.empty())
      std::cout << text;
    else
      write_file(run_out, text);
    return 0;
  }

  if (*sw) {
    const nc::SweepSpec spec = nc::sweep_spec_from_json_text(read_file(sw_spec));
    const auto records = nc::sweep(spec, sw_threads);
    std::ofstream out(sw_out);
    if (!out) throw nc::InvalidInput("cannot write " + sw_out);
    nc::write_sweep_csv(out, spec, records);
    std::cout << "wrote " << records.size() << " records to " << sw_out << "\n";
    return 0;
  }

  if (*bound) {
    const nc::AdaptiveBound adaptive = nc::adaptive_query_lower_bound(b_n, b_k, b_p, b_q);
    std::cout.precision(10);
    std::cout << "kl(p||q)              = " << nc::kl_bernoulli(b_p, b_q) << "\n"
              << "kl(q||p)              = " << nc::kl_bernoulli(b_q, b_p) << "\n"
              << "js(p,q)               = " << nc::js_bernoulli(b_p, b_q) << "\n"
              << "adaptive nk/js        = " << adaptive.js_bound << "\n"
              << "adaptive nk/min(kl)   = " << adaptive.min_kl_bound << "\n"
              << "nonadaptive nk ln n/D = "
              << nc::nonadaptive_query_lower_bound(b_n, b_k, b_p, b_q) << "\n";
    if (!b_sbm.empty()) {
      double a = 0, b = 0, qn = 0;
      char comma = 0;
      std::istringstream ss(b_sbm);
      if (!(ss >> a >> comma >> b >> comma >> qn))
        throw nc::InvalidInput("bound: --sbm expects a,b,Q");
      std::cout << "sbm_feasible(a=" << a << ",b=" << b << ",Q=" << qn
                << ")   = " << (nc::sbm_feasibility(a, b, b_k, b_n, qn) ? "true" : "false")
                << "\n";
    }
    return 0;
  }

  if (*dry) {
    nc::QueryPlan plan;
    if (dry_algo == "nonadaptive_k2") {
      plan = nc::nonadaptive_k2_plan(dry_n, dry_p, dry_alpha, dry_seed);
    } else if (dry_algo == "nonadaptive_general") {
      const auto mode = dry_mode == "info_optimal" ? nc::NonadaptiveMode::info_optimal
                                                   : nc::NonadaptiveMode::efficient;
      plan = nc::nonadaptive_general_plan(dry_n, dry_k, dry_ratio, dry_p, mode,
                                          dry_alpha, dry_seed);
    } else {
      throw nc::InvalidInput("dryrun-pairs: unsupported --algo " + dry_algo);
    }
    std::ostringstream csv;
    csv << "u,v\n";
    for (const auto& [u, v] : plan.pairs) csv << u << ',' << v << '\n';
    if (dry_out.empty())
      std::cout << csv.str();
    else
      write_file(dry_out, csv.str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const nc::InstanceTooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const nc::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
