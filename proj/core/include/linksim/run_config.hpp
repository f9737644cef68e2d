#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "linksim/harness.hpp"
#include "linksim/sim_config.hpp"

namespace linksim {

// Contents of a run configuration file. Every key is optional; omitted keys
// keep the defaults below (reference study values, the bundled first-dose curve and
// the six-point missing-match grid).
//
//   n_sim, n_days, campaign_start_day, d_risk, d_immune, rr_vacc, p_event_year,
//   second_dose_gap_mrna, second_dose_gap_az,
//   p_biontech, p_moderna, p_astrazeneca, p_janssen,
//   first_dose_curve   path to a day,probability file (relative to the config file)
//   missing_match      array of proportions, one scenario each
//   false_match, replications, alpha, seed, threads
//   missing_match_base "population" (default) or "vaccinated"
//   cox_origin         "campaign_start" (default) or "simulation_start"
//   ties               "efron" (default) or "breslow"
struct RunConfig {
  SimConfig sim = SimConfig::defaults();
  std::optional<std::filesystem::path> first_dose_curve_path;
  std::vector<double> missing_match{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  double false_match = 0.00005;
  int replications = 2000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  int threads = 1;
  MissingMatchBase missing_base = MissingMatchBase::Population;
  CoxTimeOrigin cox_origin = CoxTimeOrigin::CampaignStart;
  TieMethod ties = TieMethod::Efron;

  void validate() const;
  [[nodiscard]] std::vector<ScenarioSpec> scenarios() const;
  [[nodiscard]] RunOptions run_options() const { return {threads, ties, cox_origin}; }
};

// Flat TOML subset: `key = value` lines, `#` comments, quoted strings and
// `[a, b, ...]` arrays. Unknown keys and sections are rejected with
// std::invalid_argument; a missing file raises std::runtime_error.
RunConfig parse_run_config(std::istream& in, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

// Parses a comma-separated list of proportions ("0,0.1,0.25").
std::vector<double> parse_proportion_list(const std::string& text);

}  // namespace linksim
