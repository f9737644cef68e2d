#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "linksim/cohort.hpp"
#include "linksim/cox.hpp"
#include "linksim/linkage.hpp"

namespace linksim {

struct ScenarioSpec {
  double p_missing_match = 0.0;
  double p_false_match = 0.00005;
  int replications = 2000;
  double alpha = 0.05;
  std::uint64_t master_seed = 1;
  MissingMatchBase missing_base = MissingMatchBase::Vaccinated;

  void validate() const;
  [[nodiscard]] ErrorSpec errors() const { return {p_missing_match, p_false_match, missing_base}; }
};

enum class Method { Cox, Sccs };

std::string_view to_string(Method method) noexcept;

struct ReplicationResult {
  std::size_t scenario_id = 0;
  double p_missing_match = 0.0;
  double p_false_match = 0.0;
  int replication = 0;
  Method method = Method::Cox;
  int dose = 1;
  double estimate = 0.0;  // ratio scale
  double se_log = 0.0;
  double p_value = 1.0;
  bool converged = false;
  int iterations = 0;

  bool operator==(const ReplicationResult&) const = default;
};

// Performance criteria of one (scenario, method, dose) cell.
struct ScenarioSummary {
  std::size_t scenario_id = 0;
  double p_missing_match = 0.0;
  double p_false_match = 0.0;
  Method method = Method::Cox;
  int dose = 1;
  std::size_t n_converged = 0;
  std::size_t n_nonconverged = 0;
  // bias = mean(estimate - true_rr)
  double bias = 0.0;
  double se_bias = 0.0;
  double bias_ci_low = 0.0;
  double bias_ci_high = 0.0;
  double mse = 0.0;
  double se_mse = 0.0;
  double power = 0.0;
  double power_ci_low = 0.0;
  double power_ci_high = 0.0;
};

// Start of Cox follow-up.
enum class CoxTimeOrigin {
  SimulationStart,  // day 0
  CampaignStart,    // campaign_start_day - 1
};

struct RunOptions {
  int threads = 1;
  // Tie handling of the Cox fits.
  TieMethod ties = TieMethod::Efron;
  CoxTimeOrigin cox_origin = CoxTimeOrigin::SimulationStart;
};

// Four results (Cox and SCCS, doses 1 and 2) for one replication of a scenario.
std::vector<ReplicationResult> run_replication(const SimConfig& config, const ScenarioSpec& scenario,
                                               std::size_t scenario_id, int replication,
                                               const RunOptions& options = {});

// Same analysis applied to an already simulated cohort.
std::vector<ReplicationResult> analyse_replication(const Cohort& cohort, const ScenarioSpec& scenario,
                                                   std::size_t scenario_id, int replication,
                                                   const RunOptions& options = {});

// All replications of one scenario, sorted by (replication, method, dose).
// The cohort of replication r depends only on (master seed, r); the
// linkage-error draws additionally on the scenario id. Output is independent
// of the thread count.
std::vector<ReplicationResult> run_scenario(const SimConfig& config, const ScenarioSpec& scenario,
                                            std::size_t scenario_id = 0, const RunOptions& options = {});

// Runs scenarios in order and calls `on_done` after each one completes.
std::vector<ReplicationResult> run_grid(
    const SimConfig& config, std::span<const ScenarioSpec> scenarios, const RunOptions& options = {},
    const std::function<void(std::size_t, const ScenarioSpec&, std::span<const ReplicationResult>)>& on_done = {});

// One cell. Non-converged results are counted and otherwise ignored.
// Throws std::invalid_argument for an empty input.
ScenarioSummary summarize_cell(std::span<const ReplicationResult> cell, double true_rr, double alpha);

// Groups by (scenario, method, dose) and summarizes each cell in that order.
std::vector<ScenarioSummary> summarize(std::span<const ReplicationResult> results, double true_rr, double alpha);

}  // namespace linksim
