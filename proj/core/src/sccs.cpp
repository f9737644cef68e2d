#include "linksim/sccs.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "newton.hpp"

namespace linksim {

std::vector<SccsCase> build_sccs_cases(const Cohort& cohort) {
  const auto& config = cohort.config;
  const Day n_days = config.n_days;
  std::vector<SccsCase> cases;

  for (const auto& ind : cohort.individuals) {
    if (ind.event_days.empty()) continue;

    // Labelled, ordered, non-overlapping inclusive day ranges.
    struct Span {
      Day first;
      Day last;
      Exposure label;
    };
    std::array<Span, 2> risk{};
    std::size_t n_risk = 0;
    if (ind.vaccination && is_mrna(ind.vaccination->type)) {
      const auto& v = *ind.vaccination;
      if (v.dose1_day <= n_days) {
        Day last = std::min(v.dose1_day + config.d_risk, n_days);
        if (v.dose2_day && *v.dose2_day <= last) last = *v.dose2_day - 1;
        if (last >= v.dose1_day) risk[n_risk++] = {v.dose1_day, last, Exposure::Risk1};
      }
      if (v.dose2_day && *v.dose2_day <= n_days) {
        risk[n_risk++] = {*v.dose2_day, std::min(*v.dose2_day + config.d_risk, n_days), Exposure::Risk2};
      }
    }

    SccsCase c;
    c.id = ind.id;
    c.observation_length = n_days;
    std::array<Span, 5> spans{};
    std::size_t n_spans = 0;
    Day cursor = 1;
    for (std::size_t r = 0; r < n_risk; ++r) {
      if (risk[r].first > cursor) spans[n_spans++] = {cursor, risk[r].first - 1, Exposure::Baseline};
      spans[n_spans++] = risk[r];
      cursor = risk[r].last + 1;
    }
    if (cursor <= n_days) spans[n_spans++] = {cursor, n_days, Exposure::Baseline};

    c.intervals.reserve(n_spans);
    auto event = ind.event_days.begin();
    for (std::size_t s = 0; s < n_spans; ++s) {
      SccsInterval interval{spans[s].last - spans[s].first + 1, spans[s].label, 0};
      while (event != ind.event_days.end() && *event <= spans[s].last) {
        if (*event >= spans[s].first) ++interval.events;
        ++event;
      }
      c.intervals.push_back(interval);
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

namespace {

// Person-time and events per exposure label for one case.
struct CaseTotals {
  std::array<double, 3> length{};
  std::array<double, 3> events{};
  double total_events = 0;
};

std::vector<CaseTotals> informative_totals(std::span<const SccsCase> cases) {
  std::vector<CaseTotals> out;
  for (const auto& c : cases) {
    CaseTotals t;
    for (const auto& interval : c.intervals) {
      if (interval.length < 1) throw std::invalid_argument("SCCS interval with length < 1");
      const auto label = static_cast<std::size_t>(interval.exposure);
      t.length[label] += interval.length;
      t.events[label] += interval.events;
      t.total_events += interval.events;
    }
    const auto labels_present = std::count_if(t.length.begin(), t.length.end(), [](double l) { return l > 0; });
    if (t.total_events > 0 && labels_present > 1) out.push_back(t);
  }
  return out;
}

detail::Evaluation evaluate(const std::vector<CaseTotals>& totals, const detail::Vec2& beta) {
  detail::Evaluation ev;
  const std::array<double, 3> rel{1.0, std::exp(beta[0]), std::exp(beta[1])};
  for (const auto& t : totals) {
    const double s0 = t.length[0] * rel[0] + t.length[1] * rel[1] + t.length[2] * rel[2];
    const detail::Vec2 s1{t.length[1] * rel[1], t.length[2] * rel[2]};
    const double n = t.total_events;
    ev.loglik += t.events[1] * beta[0] + t.events[2] * beta[1] - n * std::log(s0);
    for (std::size_t a = 0; a < 2; ++a) {
      ev.score[a] += t.events[a + 1] - n * s1[a] / s0;
      for (std::size_t b = 0; b < 2; ++b) {
        const double diag = a == b ? s1[a] / s0 : 0.0;
        ev.information[a][b] += n * (diag - s1[a] * s1[b] / (s0 * s0));
      }
    }
  }
  return ev;
}

}  // namespace

FitResult fit_sccs(std::span<const SccsCase> cases, const NewtonOptions& options) {
  const auto totals = informative_totals(cases);
  if (totals.empty()) throw std::invalid_argument("fit_sccs: no informative cases");
  std::array<bool, 2> active{false, false};
  for (const auto& t : totals) {
    for (std::size_t j = 0; j < 2; ++j) {
      const double other = t.length[0] + t.length[1] + t.length[2] - t.length[j + 1];
      if (t.length[j + 1] > 0 && other > 0) active[j] = true;
    }
  }
  return detail::maximize([&](const detail::Vec2& beta) { return evaluate(totals, beta); }, active, options);
}

double sccs_log_likelihood(std::span<const SccsCase> cases, double beta1, double beta2) {
  return evaluate(informative_totals(cases), {beta1, beta2}).loglik;
}

}  // namespace linksim
