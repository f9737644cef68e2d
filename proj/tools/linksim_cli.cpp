// linksim: Monte-Carlo study of record-linkage errors in vaccine-safety analyses.
//
//   linksim run --config sim.toml --out results/ --seed 42 --threads 8
//   linksim curve --out first_dose_curve.csv

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "linksim/first_dose_curve.hpp"
#include "linksim/harness.hpp"
#include "linksim/results_io.hpp"
#include "linksim/run_config.hpp"

namespace fs = std::filesystem;

namespace {

struct RunArgs {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> reps;
  std::optional<std::string> scenarios;
  bool quiet = false;
};

int run(const RunArgs& args) {
  auto config = linksim::load_run_config(args.config_path);
  if (args.seed) config.seed = *args.seed;
  if (args.threads) config.threads = *args.threads;
  if (args.reps) config.replications = *args.reps;
  if (args.scenarios) config.missing_match = linksim::parse_proportion_list(*args.scenarios);
  config.validate();

  fs::create_directories(args.out_dir);
  const auto scenarios = config.scenarios();
  const auto options = config.run_options();

  const auto started = std::chrono::steady_clock::now();
  const auto results = linksim::run_grid(
      config.sim, scenarios, options,
      [&](std::size_t id, const linksim::ScenarioSpec& s, std::span<const linksim::ReplicationResult>) {
        if (args.quiet) return;
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        std::fprintf(stderr, "scenario %zu/%zu done: missing=%.4g false=%.4g reps=%d (%.1fs)\n", id + 1,
                     scenarios.size(), s.p_missing_match, s.p_false_match, s.replications, elapsed.count());
      });
  const auto summary = linksim::summarize(results, config.sim.rr_vacc, config.alpha);

  const auto replications_path = fs::path(args.out_dir) / "replications.csv";
  const auto summary_path = fs::path(args.out_dir) / "summary.csv";
  {
    std::ofstream out(replications_path);
    if (!out) throw std::runtime_error("cannot write " + replications_path.string());
    linksim::write_replications_csv(out, results);
  }
  {
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("cannot write " + summary_path.string());
    linksim::write_summary_csv(out, summary, config.sim.rr_vacc);
  }
  if (!args.quiet) {
    std::fprintf(stderr, "wrote %s and %s\n", replications_path.c_str(), summary_path.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte-Carlo simulation of record-linkage errors in vaccine-safety analyses"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run_cmd = app.add_subcommand("run", "Simulate the scenario grid and write result tables");
  run_cmd->add_option("--config", run_args.config_path, "Run configuration file")->required();
  run_cmd->add_option("--out", run_args.out_dir, "Output directory")->required();
  run_cmd->add_option("--seed", run_args.seed, "Master seed (overrides the config)");
  run_cmd->add_option("--threads", run_args.threads, "Worker threads (overrides the config)");
  run_cmd->add_option("--reps", run_args.reps, "Replications per scenario (overrides the config)");
  run_cmd->add_option("--scenarios", run_args.scenarios,
                      "Comma-separated missing-match proportions (overrides the config)");
  run_cmd->add_flag("--quiet", run_args.quiet, "Suppress progress output");

  std::string curve_out;
  std::size_t curve_days = linksim::SimConfig{}.campaign_length();
  auto* curve_cmd = app.add_subcommand("curve", "Write the bundled first-dose curve as day,probability CSV");
  curve_cmd->add_option("--out", curve_out, "Output file (stdout if omitted)");
  curve_cmd->add_option("--days", curve_days, "Number of campaign days")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return run(run_args);
    if (curve_cmd->parsed()) {
      const auto curve = linksim::default_first_dose_curve(curve_days);
      if (curve_out.empty()) {
        linksim::write_first_dose_curve(std::cout, curve);
      } else {
        std::ofstream out(curve_out);
        if (!out) throw std::runtime_error("cannot write " + curve_out);
        linksim::write_first_dose_curve(out, curve);
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "linksim: error: %s\n", e.what());
    return 2;
  }
  return 1;
}
