#include "linksim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "linksim/inference.hpp"
#include "linksim/sccs.hpp"

namespace linksim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// 97.5% standard normal quantile.
constexpr double kZ975 = 1.959963984540054;

}  // namespace

void ScenarioSpec::validate() const {
  errors().validate();
  if (replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
}

std::string_view to_string(Method method) noexcept {
  return method == Method::Cox ? "cox" : "sccs";
}

std::vector<ReplicationResult> analyse_replication(const Cohort& cohort, const ScenarioSpec& scenario,
                                                   std::size_t scenario_id, int replication,
                                                   const RunOptions& options) {
  const auto rep = static_cast<std::uint64_t>(replication);
  Rng missing_rng(perturbation_seed(scenario.master_seed, scenario_id, rep, Stream::MissingMatch));
  Rng false_rng(perturbation_seed(scenario.master_seed, scenario_id, rep, Stream::FalseMatch));

  const auto errors = scenario.errors();
  const bool perturb = errors.p_missing_match > 0.0 || errors.p_false_match > 0.0;
  Cohort perturbed_storage;
  if (perturb) perturbed_storage = apply_linkage_errors(cohort, errors, missing_rng, false_rng);
  const Cohort& analysed = perturb ? perturbed_storage : cohort;

  std::vector<ReplicationResult> out;
  out.reserve(4);
  const auto record = [&](Method method, const FitResult* fit) {
    for (int dose = 1; dose <= 2; ++dose) {
      ReplicationResult r;
      r.scenario_id = scenario_id;
      r.p_missing_match = scenario.p_missing_match;
      r.p_false_match = scenario.p_false_match;
      r.replication = replication;
      r.method = method;
      r.dose = dose;
      if (fit) {
        const auto& c = fit->dose(dose);
        r.estimate = c.effect;
        r.se_log = c.se;
        r.p_value = c.p_value;
        r.converged = fit->converged && c.usable();
        r.iterations = fit->iterations;
      } else {
        r.estimate = r.se_log = r.p_value = kNaN;
      }
      out.push_back(r);
    }
  };

  {
    const Day origin =
        options.cox_origin == CoxTimeOrigin::CampaignStart ? analysed.config.campaign_start_day - 1 : 0;
    const auto rows = build_counting_process(analysed, origin);
    std::optional<FitResult> fit;
    try {
      fit = fit_cox(rows, options.ties);
    } catch (const std::invalid_argument&) {
    }
    record(Method::Cox, fit ? &*fit : nullptr);
  }
  {
    const auto cases = build_sccs_cases(analysed);
    std::optional<FitResult> fit;
    try {
      fit = fit_sccs(cases);
    } catch (const std::invalid_argument&) {
    }
    record(Method::Sccs, fit ? &*fit : nullptr);
  }
  return out;
}

std::vector<ReplicationResult> run_replication(const SimConfig& config, const ScenarioSpec& scenario,
                                               std::size_t scenario_id, int replication,
                                               const RunOptions& options) {
  const auto cohort = simulate_cohort(config, cohort_seed(scenario.master_seed, static_cast<std::uint64_t>(replication)));
  return analyse_replication(cohort, scenario, scenario_id, replication, options);
}

std::vector<ReplicationResult> run_scenario(const SimConfig& config, const ScenarioSpec& scenario,
                                            std::size_t scenario_id, const RunOptions& options) {
  config.validate();
  scenario.validate();
  const auto reps = static_cast<std::size_t>(scenario.replications);
  std::vector<std::vector<ReplicationResult>> slots(reps);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (;;) {
      const auto r = next.fetch_add(1);
      if (r >= reps) return;
      try {
        slots[r] = run_replication(config, scenario, scenario_id, static_cast<int>(r), options);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(reps);
        return;
      }
    }
  };

  const auto width = static_cast<std::size_t>(std::max(1, options.threads));
  if (width == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(width);
    for (std::size_t t = 0; t < std::min(width, reps); ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ReplicationResult> results;
  results.reserve(reps * 4);
  for (auto& slot : slots) results.insert(results.end(), slot.begin(), slot.end());
  return results;
}

std::vector<ReplicationResult> run_grid(
    const SimConfig& config, std::span<const ScenarioSpec> scenarios, const RunOptions& options,
    const std::function<void(std::size_t, const ScenarioSpec&, std::span<const ReplicationResult>)>& on_done) {
  std::vector<ReplicationResult> all;
  for (std::size_t s = 0; s < scenarios.size(); ++s) {
    auto results = run_scenario(config, scenarios[s], s, options);
    if (on_done) on_done(s, scenarios[s], results);
    all.insert(all.end(), results.begin(), results.end());
  }
  return all;
}

ScenarioSummary summarize_cell(std::span<const ReplicationResult> cell, double true_rr, double alpha) {
  if (cell.empty()) throw std::invalid_argument("summarize: empty cell");
  ScenarioSummary s;
  s.scenario_id = cell.front().scenario_id;
  s.p_missing_match = cell.front().p_missing_match;
  s.p_false_match = cell.front().p_false_match;
  s.method = cell.front().method;
  s.dose = cell.front().dose;

  std::vector<double> errors;
  long rejections = 0;
  for (const auto& r : cell) {
    if (!r.converged) {
      ++s.n_nonconverged;
      continue;
    }
    errors.push_back(r.estimate - true_rr);
    if (r.p_value < alpha) ++rejections;
  }
  s.n_converged = errors.size();
  if (errors.empty()) {
    s.bias = s.se_bias = s.bias_ci_low = s.bias_ci_high = kNaN;
    s.mse = s.se_mse = kNaN;
    s.power = s.power_ci_low = s.power_ci_high = kNaN;
    return s;
  }

  const auto n = static_cast<double>(errors.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double e : errors) {
    sum += e;
    sum_sq += e * e;
  }
  s.bias = sum / n;
  s.mse = sum_sq / n;
  if (errors.size() >= 2) {
    double var_e = 0.0;
    double var_sq = 0.0;
    for (double e : errors) {
      var_e += (e - s.bias) * (e - s.bias);
      var_sq += (e * e - s.mse) * (e * e - s.mse);
    }
    s.se_bias = std::sqrt(var_e / (n - 1.0) / n);
    s.se_mse = std::sqrt(var_sq / (n - 1.0) / n);
  } else {
    s.se_bias = s.se_mse = kNaN;
  }
  s.bias_ci_low = s.bias - kZ975 * s.se_bias;
  s.bias_ci_high = s.bias + kZ975 * s.se_bias;

  s.power = static_cast<double>(rejections) / n;
  std::tie(s.power_ci_low, s.power_ci_high) =
      exact_binomial_ci(rejections, static_cast<long>(errors.size()), 0.95);
  return s;
}

std::vector<ScenarioSummary> summarize(std::span<const ReplicationResult> results, double true_rr, double alpha) {
  if (results.empty()) throw std::invalid_argument("summarize: no results");
  using Key = std::tuple<std::size_t, int, int>;
  std::map<Key, std::vector<ReplicationResult>> cells;
  for (const auto& r : results) {
    cells[{r.scenario_id, static_cast<int>(r.method), r.dose}].push_back(r);
  }
  std::vector<ScenarioSummary> out;
  out.reserve(cells.size());
  for (auto& [key, cell] : cells) {
    std::sort(cell.begin(), cell.end(),
              [](const auto& a, const auto& b) { return a.replication < b.replication; });
    out.push_back(summarize_cell(cell, true_rr, alpha));
  }
  return out;
}

}  // namespace linksim
