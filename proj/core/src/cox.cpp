#include "linksim/cox.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "newton.hpp"

namespace linksim {

std::vector<CountingProcessRow> build_counting_process(const Cohort& cohort, Day origin) {
  const auto& config = cohort.config;
  std::vector<CountingProcessRow> rows;
  rows.reserve(cohort.individuals.size() + cohort.individuals.size() / 2);

  std::array<Day, 6> cuts{};
  for (const auto& ind : cohort.individuals) {
    const auto first_event = std::upper_bound(ind.event_days.begin(), ind.event_days.end(), origin);
    const bool has_event = first_event != ind.event_days.end();
    const Day end = has_event ? *first_event : config.n_days;
    if (end <= origin) continue;

    std::array<std::pair<Day, Day>, 2> windows{};  // inclusive day ranges
    std::size_t n_windows = 0;
    if (ind.vaccination && is_mrna(ind.vaccination->type)) {
      windows[n_windows++] = {ind.vaccination->dose1_day, ind.vaccination->dose1_day + config.d_risk};
      if (ind.vaccination->dose2_day) {
        windows[n_windows++] = {*ind.vaccination->dose2_day, *ind.vaccination->dose2_day + config.d_risk};
      }
    }

    std::size_t n_cuts = 0;
    cuts[n_cuts++] = origin;
    for (std::size_t w = 0; w < n_windows; ++w) {
      for (Day c : {windows[w].first - 1, windows[w].second}) {
        if (c > origin && c < end) cuts[n_cuts++] = c;
      }
    }
    cuts[n_cuts++] = end;
    std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n_cuts));
    const auto last = std::unique(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n_cuts));
    n_cuts = static_cast<std::size_t>(last - cuts.begin());

    for (std::size_t k = 1; k < n_cuts; ++k) {
      CountingProcessRow row;
      row.subject = ind.id;
      row.start = cuts[k - 1];
      row.stop = cuts[k];
      const auto covers = [&](std::size_t w) {
        return w < n_windows && row.stop >= windows[w].first && row.stop <= windows[w].second;
      };
      row.x1 = covers(0);
      row.x2 = covers(1);
      row.event = has_event && k + 1 == n_cuts;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

constexpr std::size_t kPatterns = 4;

constexpr std::array<std::array<double, 2>, kPatterns> kPatternCovariates{{{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

std::size_t pattern_of(const CountingProcessRow& row) {
  return static_cast<std::size_t>(row.x1) | (static_cast<std::size_t>(row.x2) << 1);
}

// Risk-set and event counts per covariate pattern at each distinct event time.
// The binary covariates make these sufficient for the partial likelihood.
struct RiskSetTable {
  std::vector<std::array<double, kPatterns>> at_risk;
  std::vector<std::array<double, kPatterns>> events;

  explicit RiskSetTable(std::span<const CountingProcessRow> rows) {
    std::vector<Day> times;
    for (const auto& row : rows) {
      if (!(row.start < row.stop)) throw std::invalid_argument("counting-process row with start >= stop");
      if (row.event) times.push_back(row.stop);
    }
    if (times.empty()) throw std::invalid_argument("fit_cox: no events");
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const std::size_t m = times.size();
    std::vector<std::array<double, kPatterns>> delta(m + 1, std::array<double, kPatterns>{});
    events.assign(m, std::array<double, kPatterns>{});
    for (const auto& row : rows) {
      const auto p = pattern_of(row);
      const auto lo = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), row.start) - times.begin());
      const auto hi = static_cast<std::size_t>(std::upper_bound(times.begin(), times.end(), row.stop) - times.begin());
      if (lo >= hi) continue;
      delta[lo][p] += 1.0;
      delta[hi][p] -= 1.0;
      if (row.event) events[hi - 1][p] += 1.0;
    }
    at_risk.assign(m, std::array<double, kPatterns>{});
    std::array<double, kPatterns> running{};
    for (std::size_t k = 0; k < m; ++k) {
      for (std::size_t p = 0; p < kPatterns; ++p) {
        running[p] += delta[k][p];
        at_risk[k][p] = running[p];
      }
    }
  }

  // A coefficient is identifiable when some risk set mixes exposed and unexposed subjects.
  [[nodiscard]] bool identifiable(std::size_t j) const {
    for (const auto& n : at_risk) {
      double exposed = 0.0;
      double unexposed = 0.0;
      for (std::size_t p = 0; p < kPatterns; ++p) {
        (kPatternCovariates[p][j] > 0 ? exposed : unexposed) += n[p];
      }
      if (exposed > 0 && unexposed > 0) return true;
    }
    return false;
  }

  [[nodiscard]] detail::Evaluation evaluate(const detail::Vec2& beta, TieMethod ties) const {
    detail::Evaluation ev;
    std::array<double, kPatterns> risk{};
    for (std::size_t p = 0; p < kPatterns; ++p) {
      risk[p] = std::exp(beta[0] * kPatternCovariates[p][0] + beta[1] * kPatternCovariates[p][1]);
    }
    for (std::size_t k = 0; k < at_risk.size(); ++k) {
      double s0 = 0, d0 = 0, n_events = 0;
      detail::Vec2 s1{}, d1{};
      detail::Mat2 s2{}, d2{};
      for (std::size_t p = 0; p < kPatterns; ++p) {
        const auto& x = kPatternCovariates[p];
        const double wr = at_risk[k][p] * risk[p];
        const double we = events[k][p] * risk[p];
        s0 += wr;
        d0 += we;
        n_events += events[k][p];
        if (events[k][p] > 0) ev.loglik += events[k][p] * (beta[0] * x[0] + beta[1] * x[1]);
        for (std::size_t a = 0; a < 2; ++a) {
          s1[a] += wr * x[a];
          d1[a] += we * x[a];
          ev.score[a] += events[k][p] * x[a];
          for (std::size_t b = 0; b < 2; ++b) {
            s2[a][b] += wr * x[a] * x[b];
            d2[a][b] += we * x[a] * x[b];
          }
        }
      }
      if (n_events == 0) continue;
      const auto add_term = [&](double weight, double a0, const detail::Vec2& a1, const detail::Mat2& a2) {
        ev.loglik -= weight * std::log(a0);
        for (std::size_t a = 0; a < 2; ++a) {
          ev.score[a] -= weight * a1[a] / a0;
          for (std::size_t b = 0; b < 2; ++b) {
            ev.information[a][b] += weight * (a2[a][b] / a0 - a1[a] * a1[b] / (a0 * a0));
          }
        }
      };
      if (ties == TieMethod::Breslow || n_events == 1) {
        add_term(n_events, s0, s1, s2);
        continue;
      }
      const auto tied = static_cast<int>(n_events);
      for (int l = 0; l < tied; ++l) {
        const double f = static_cast<double>(l) / n_events;
        detail::Vec2 a1{s1[0] - f * d1[0], s1[1] - f * d1[1]};
        detail::Mat2 a2{};
        for (std::size_t a = 0; a < 2; ++a) {
          for (std::size_t b = 0; b < 2; ++b) a2[a][b] = s2[a][b] - f * d2[a][b];
        }
        add_term(1.0, s0 - f * d0, a1, a2);
      }
    }
    return ev;
  }
};

}  // namespace

FitResult fit_cox(std::span<const CountingProcessRow> rows, TieMethod ties, const NewtonOptions& options) {
  const RiskSetTable table(rows);
  const std::array<bool, 2> active{table.identifiable(0), table.identifiable(1)};
  return detail::maximize(
      [&](const detail::Vec2& beta) { return table.evaluate(beta, ties); }, active, options);
}

double cox_log_partial_likelihood(std::span<const CountingProcessRow> rows, double beta1, double beta2,
                                  TieMethod ties) {
  const RiskSetTable table(rows);
  return table.evaluate({beta1, beta2}, ties).loglik;
}

}  // namespace linksim
