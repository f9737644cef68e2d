#include "linksim/cohort.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace linksim {

std::size_t Cohort::vaccinated_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      individuals.begin(), individuals.end(), [](const auto& ind) { return ind.vaccination.has_value(); }));
}

std::size_t Cohort::event_count() const noexcept {
  std::size_t total = 0;
  for (const auto& ind : individuals) total += ind.event_days.size();
  return total;
}

double annual_to_daily_probability(double p_year) {
  if (!(p_year >= 0.0 && p_year <= 1.0)) {
    throw std::invalid_argument("annual probability must lie in [0,1]");
  }
  if (p_year == 1.0) return 1.0;
  return -std::expm1(std::log1p(-p_year) / 365.0);
}

VaccineType sample_vaccine_type(const VaccineTypeDistribution& dist, Rng& rng) {
  validate_vaccine_type_dist(dist);
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] <= 0.0) continue;
    last_positive = i;
    cumulative += dist[i];
    if (u < cumulative) return static_cast<VaccineType>(i);
  }
  // u landed in the rounding slack above the accumulated total.
  return static_cast<VaccineType>(last_positive);
}

std::optional<Day> schedule_second_dose(VaccineType type, Day dose1_day, const SimConfig& config) {
  const auto gap = config.second_dose_gap(type);
  if (!gap) return std::nullopt;
  const Day day = dose1_day + *gap;
  if (day > config.n_days) return std::nullopt;
  return day;
}

bool in_risk_window(const VaccinationRecord& record, Day t, Day d_risk) noexcept {
  if (!is_mrna(record.type)) return false;
  const auto covers = [&](Day dose) { return t >= dose && t <= dose + d_risk; };
  return covers(record.dose1_day) || (record.dose2_day && covers(*record.dose2_day));
}

namespace {

// Constant daily event probability over [first, last]. `survival[L]` is the
// probability of no event in L consecutive days, (1 - p)^L.
struct Segment {
  Day first;
  Day last;
  const std::vector<double>* survival;
  double log_complement;  // log(1 - p)
};

// Piecewise-constant daily event probability over [1, n_days].
class HazardProfile {
 public:
  HazardProfile(const SimConfig& config, double p_day)
      : n_days_(config.n_days),
        d_risk_(config.d_risk),
        base_(survival_table(p_day, config.n_days)),
        risk_(survival_table(p_day * config.rr_vacc, config.n_days)),
        log_base_(std::log1p(-p_day)),
        log_risk_(std::log1p(-p_day * config.rr_vacc)) {}

  // Fills `segments` for one individual; at most five entries.
  std::size_t build(const std::optional<VaccinationRecord>& vacc, std::array<Segment, 5>& segments) const {
    std::array<std::pair<Day, Day>, 2> windows{};
    std::size_t n_windows = 0;
    if (vacc && is_mrna(vacc->type)) {
      const auto add = [&](Day dose) {
        const Day hi = std::min(dose + d_risk_, n_days_);
        if (dose > n_days_) return;
        if (n_windows > 0 && dose <= windows[n_windows - 1].second + 1) {
          windows[n_windows - 1].second = std::max(windows[n_windows - 1].second, hi);
        } else {
          windows[n_windows++] = {dose, hi};
        }
      };
      add(vacc->dose1_day);
      if (vacc->dose2_day) add(*vacc->dose2_day);
    }
    std::size_t n = 0;
    Day cursor = 1;
    for (std::size_t w = 0; w < n_windows; ++w) {
      if (windows[w].first > cursor) segments[n++] = {cursor, windows[w].first - 1, &base_, log_base_};
      segments[n++] = {windows[w].first, windows[w].second, &risk_, log_risk_};
      cursor = windows[w].second + 1;
    }
    if (cursor <= n_days_) segments[n++] = {cursor, n_days_, &base_, log_base_};
    return n;
  }

 private:
  static std::vector<double> survival_table(double p, Day n_days) {
    std::vector<double> table(static_cast<std::size_t>(n_days) + 1);
    const double log_q = std::log1p(-p);
    for (std::size_t len = 0; len < table.size(); ++len) {
      table[len] = p >= 1.0 ? (len == 0 ? 1.0 : 0.0) : std::exp(static_cast<double>(len) * log_q);
    }
    return table;
  }

  Day n_days_;
  Day d_risk_;
  std::vector<double> base_;
  std::vector<double> risk_;
  double log_base_;
  double log_risk_;
};

// Geometric waiting times, G = floor(log U / log(1 - p)). G >= L exactly when
// U <= (1 - p)^L, so a segment without events costs one uniform and a lookup.
void draw_events(const std::array<Segment, 5>& segments, std::size_t n_segments, Day d_immune, Rng& rng,
                 std::vector<Day>& events) {
  Day day = 1;
  for (std::size_t s = 0; s < n_segments; ++s) {
    const auto& seg = segments[s];
    if (day < seg.first) day = seg.first;
    while (day <= seg.last) {
      const Day remaining = seg.last - day + 1;
      const double u = rng.uniform_pos();
      if (u <= (*seg.survival)[static_cast<std::size_t>(remaining)]) {
        day = seg.last + 1;
        break;
      }
      const double wait = std::isinf(seg.log_complement) || seg.log_complement == 0.0
                              ? 0.0
                              : std::floor(std::log(u) / seg.log_complement);
      const Day event = day + std::min(static_cast<Day>(wait), remaining - 1);
      events.push_back(event);
      day = event + d_immune + 1;
    }
  }
}

// Cumulative probability of having received a first dose by campaign day k.
std::vector<double> first_dose_cdf(const SimConfig& config) {
  const std::size_t length = config.campaign_length();
  std::vector<double> cdf(length);
  double unvaccinated = 1.0;
  for (std::size_t k = 0; k < length; ++k) {
    unvaccinated *= 1.0 - config.first_dose_curve[k];
    cdf[k] = 1.0 - unvaccinated;
  }
  return cdf;
}

}  // namespace

Cohort simulate_cohort(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  const double p_day = annual_to_daily_probability(config.p_event_year);
  const HazardProfile profile(config, p_day);
  const auto cdf = first_dose_cdf(config);

  Cohort cohort;
  cohort.config = config;
  cohort.seed = seed;
  cohort.individuals.resize(static_cast<std::size_t>(config.n_sim));

  std::array<Segment, 5> segments{};
  for (std::size_t i = 0; i < cohort.individuals.size(); ++i) {
    auto& ind = cohort.individuals[i];
    ind.id = static_cast<std::int64_t>(i);
    if (!cdf.empty()) {
      const double u = rng.uniform();
      const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it != cdf.end()) {
        VaccinationRecord record;
        record.dose1_day = config.campaign_start_day + static_cast<Day>(it - cdf.begin());
        record.type = sample_vaccine_type(config.vaccine_type_dist, rng);
        record.dose2_day = schedule_second_dose(record.type, record.dose1_day, config);
        ind.vaccination = record;
      }
    }
    const auto n_segments = profile.build(ind.vaccination, segments);
    draw_events(segments, n_segments, config.d_immune, rng, ind.event_days);
  }
  return cohort;
}

Cohort simulate_cohort_daily(const SimConfig& config, std::uint64_t seed) {
  config.validate();
  Rng rng(seed);
  const double p_day = annual_to_daily_probability(config.p_event_year);
  const double p_risk = p_day * config.rr_vacc;

  Cohort cohort;
  cohort.config = config;
  cohort.seed = seed;
  cohort.individuals.resize(static_cast<std::size_t>(config.n_sim));
  for (std::size_t i = 0; i < cohort.individuals.size(); ++i) {
    cohort.individuals[i].id = static_cast<std::int64_t>(i);
  }

  for (Day t = 1; t <= config.n_days; ++t) {
    for (auto& ind : cohort.individuals) {
      if (!ind.vaccination && t >= config.campaign_start_day) {
        const double q = config.first_dose_curve[static_cast<std::size_t>(t - config.campaign_start_day)];
        if (rng.bernoulli(q)) {
          VaccinationRecord record;
          record.dose1_day = t;
          record.type = sample_vaccine_type(config.vaccine_type_dist, rng);
          record.dose2_day = schedule_second_dose(record.type, t, config);
          ind.vaccination = record;
        }
      }
      if (!ind.event_days.empty() && t <= ind.event_days.back() + config.d_immune) continue;
      const bool at_risk = ind.vaccination && in_risk_window(*ind.vaccination, t, config.d_risk);
      if (rng.bernoulli(at_risk ? p_risk : p_day)) ind.event_days.push_back(t);
    }
  }
  return cohort;
}

namespace {

class Fnv1a {
 public:
  void add(std::uint64_t value) noexcept {
    for (int b = 0; b < 8; ++b) {
      hash_ ^= (value >> (8 * b)) & 0xffU;
      hash_ *= 0x100000001b3ULL;
    }
  }
  [[nodiscard]] std::uint64_t value() const noexcept { return hash_; }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace

std::uint64_t cohort_fingerprint(const Cohort& cohort) noexcept {
  Fnv1a h;
  h.add(cohort.individuals.size());
  for (const auto& ind : cohort.individuals) {
    h.add(static_cast<std::uint64_t>(ind.id));
    if (ind.vaccination) {
      const auto& v = *ind.vaccination;
      h.add(1 + static_cast<std::uint64_t>(v.type));
      h.add(static_cast<std::uint64_t>(v.dose1_day));
      h.add(v.dose2_day ? static_cast<std::uint64_t>(*v.dose2_day) : ~0ULL);
    } else {
      h.add(0);
    }
    h.add(ind.event_days.size());
    for (Day d : ind.event_days) h.add(static_cast<std::uint64_t>(d));
  }
  return h.value();
}

}  // namespace linksim
