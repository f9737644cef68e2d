#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "linksim/cohort.hpp"
#include "linksim/first_dose_curve.hpp"

namespace linksim {
namespace {

SimConfig small_config() {
  SimConfig c;
  c.n_sim = 3000;
  c.n_days = 200;
  c.campaign_start_day = 60;
  c.d_risk = 21;
  c.d_immune = 42;
  c.rr_vacc = 3.24;
  c.p_event_year = 0.2;
  c.first_dose_curve = default_first_dose_curve(c.campaign_length(), {0.02, 40, 10});
  return c;
}

// Chi-square test of homogeneity between two histograms; sparse tail bins are
// pooled until each pooled cell has at least 5 expected counts.
double homogeneity_p_value(const std::map<long, long>& a, const std::map<long, long>& b) {
  std::set<long> keys;
  for (auto& [k, _] : a) keys.insert(k);
  for (auto& [k, _] : b) keys.insert(k);
  double na = 0, nb = 0;
  for (auto& [_, v] : a) na += v;
  for (auto& [_, v] : b) nb += v;
  std::vector<std::pair<double, double>> cells;
  double ca = 0, cb = 0;
  for (long k : keys) {
    ca += a.count(k) ? a.at(k) : 0;
    cb += b.count(k) ? b.at(k) : 0;
    const double total = ca + cb;
    if (std::min(total * na / (na + nb), total * nb / (na + nb)) >= 5) {
      cells.emplace_back(ca, cb);
      ca = cb = 0;
    }
  }
  if (ca + cb > 0) {
    if (cells.empty()) cells.emplace_back(0, 0);
    cells.back().first += ca;
    cells.back().second += cb;
  }
  if (cells.size() < 2) return 1.0;
  double stat = 0;
  for (auto [x, y] : cells) {
    const double total = x + y;
    const double ex = total * na / (na + nb), ey = total * nb / (na + nb);
    stat += (x - ex) * (x - ex) / ex + (y - ey) * (y - ey) / ey;
  }
  boost::math::chi_squared dist(static_cast<double>(cells.size() - 1));
  return boost::math::cdf(boost::math::complement(dist, stat));
}

TEST(AnnualToDaily, Examples) {
  EXPECT_EQ(annual_to_daily_probability(0.0), 0.0);
  EXPECT_EQ(annual_to_daily_probability(1.0), 1.0);
  EXPECT_NEAR(annual_to_daily_probability(0.00016), 4.383911405243764e-7, 1e-20);
  EXPECT_THROW(annual_to_daily_probability(-0.1), std::invalid_argument);
  EXPECT_THROW(annual_to_daily_probability(1.1), std::invalid_argument);
}

TEST(VaccineType, DegenerateDistribution) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) EXPECT_EQ(sample_vaccine_type({1, 0, 0, 0}, rng), VaccineType::BionTech);
}

TEST(VaccineType, DefaultFrequencies) {
  Rng rng(2);
  std::array<long, 4> counts{};
  const long n = 1'000'000;
  for (long i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(sample_vaccine_type(kDefaultVaccineTypeDist, rng))];
  const std::array<double, 4> expected{0.6777, 0.08083, 0.1993, 0.04216};
  for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(static_cast<double>(counts[k]) / n, expected[k], 0.002);
}

TEST(VaccineType, InvalidDistributionRejected) {
  Rng rng(3);
  EXPECT_THROW(sample_vaccine_type({0.5, 0.5, 0.5, 0.0}, rng), std::invalid_argument);
}

TEST(SecondDose, Schedule) {
  const auto config = SimConfig::defaults();
  EXPECT_EQ(schedule_second_dose(VaccineType::BionTech, 400, config), 442);
  EXPECT_EQ(schedule_second_dose(VaccineType::Moderna, 400, config), 442);
  EXPECT_EQ(schedule_second_dose(VaccineType::AstraZeneca, 400, config), 484);
  EXPECT_FALSE(schedule_second_dose(VaccineType::Janssen, 400, config));
  EXPECT_EQ(schedule_second_dose(VaccineType::BionTech, 508, config), 550);
  EXPECT_FALSE(schedule_second_dose(VaccineType::BionTech, 509, config));
}

TEST(RiskWindow, ClosedInterval) {
  const VaccinationRecord mrna{400, 442, VaccineType::BionTech};
  EXPECT_FALSE(in_risk_window(mrna, 399, 21));
  EXPECT_TRUE(in_risk_window(mrna, 400, 21));
  EXPECT_TRUE(in_risk_window(mrna, 421, 21));
  EXPECT_FALSE(in_risk_window(mrna, 422, 21));
  EXPECT_TRUE(in_risk_window(mrna, 442, 21));
  EXPECT_TRUE(in_risk_window(mrna, 463, 21));
  EXPECT_FALSE(in_risk_window(mrna, 464, 21));
  const VaccinationRecord az{400, 484, VaccineType::AstraZeneca};
  EXPECT_FALSE(in_risk_window(az, 405, 21));
  EXPECT_FALSE(in_risk_window(az, 484, 21));
}

TEST(Simulate, DeterministicInSeed) {
  const auto config = small_config();
  const auto a = simulate_cohort(config, 99);
  const auto b = simulate_cohort(config, 99);
  EXPECT_EQ(a, b);
  EXPECT_EQ(cohort_fingerprint(a), cohort_fingerprint(b));
  EXPECT_NE(cohort_fingerprint(a), cohort_fingerprint(simulate_cohort(config, 100)));
}

TEST(Simulate, RejectsShortCurve) {
  auto config = small_config();
  config.first_dose_curve.resize(config.campaign_length() - 1);
  EXPECT_THROW(simulate_cohort(config, 1), std::invalid_argument);
}

TEST(Simulate, StructuralInvariants) {
  auto config = small_config();
  config.p_event_year = 0.9;  // many recurrences
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto cohort = simulate_cohort(config, seed);
    ASSERT_EQ(cohort.individuals.size(), static_cast<std::size_t>(config.n_sim));
    std::set<std::int64_t> ids;
    for (const auto& ind : cohort.individuals) {
      ids.insert(ind.id);
      for (std::size_t k = 0; k < ind.event_days.size(); ++k) {
        ASSERT_GE(ind.event_days[k], 1);
        ASSERT_LE(ind.event_days[k], config.n_days);
        if (k > 0) ASSERT_GT(ind.event_days[k] - ind.event_days[k - 1], config.d_immune);
      }
      if (!ind.vaccination) continue;
      const auto& v = *ind.vaccination;
      ASSERT_GE(v.dose1_day, config.campaign_start_day);
      ASSERT_LE(v.dose1_day, config.n_days);
      const auto gap = config.second_dose_gap(v.type);
      if (v.dose2_day) {
        ASSERT_TRUE(gap.has_value());
        ASSERT_EQ(*v.dose2_day, v.dose1_day + *gap);
        ASSERT_LE(*v.dose2_day, config.n_days);
      } else if (gap) {
        ASSERT_GT(v.dose1_day + *gap, config.n_days);
      }
    }
    EXPECT_EQ(ids.size(), cohort.individuals.size());
  }
}

TEST(Simulate, PooledRateWithoutVaccination) {
  SimConfig config;
  config.n_sim = 20000;
  config.n_days = 550;
  config.rr_vacc = 1.0;
  config.d_immune = 0;
  config.p_event_year = 0.05;
  config.first_dose_curve.assign(config.campaign_length(), 0.0);
  const auto cohort = simulate_cohort(config, 5);
  const double person_days = static_cast<double>(config.n_sim) * config.n_days;
  ASSERT_GE(person_days, 1e7);
  const double p = annual_to_daily_probability(config.p_event_year);
  const double se = std::sqrt(person_days * p * (1 - p));
  EXPECT_EQ(cohort.vaccinated_count(), 0u);
  EXPECT_NEAR(static_cast<double>(cohort.event_count()), person_days * p, 4 * se);
}

TEST(Simulate, PerIndividualCountsAreBinomial) {
  SimConfig config;
  config.n_sim = 40000;
  config.n_days = 300;
  config.campaign_start_day = 200;
  config.rr_vacc = 1.0;
  config.d_immune = 0;
  config.p_event_year = 0.5;
  config.first_dose_curve.assign(config.campaign_length(), 0.0);
  const auto cohort = simulate_cohort(config, 17);
  const double p = annual_to_daily_probability(config.p_event_year);
  std::map<long, long> observed;
  for (const auto& ind : cohort.individuals) ++observed[static_cast<long>(ind.event_days.size())];

  // Binomial(n_days, p) probabilities, tail pooled into the last cell.
  std::vector<double> expected;
  std::vector<double> counts;
  double tail = 1.0;
  for (long k = 0;; ++k) {
    const double pk = std::exp(std::lgamma(config.n_days + 1.0) - std::lgamma(k + 1.0) -
                               std::lgamma(config.n_days - k + 1.0) + k * std::log(p) +
                               (config.n_days - k) * std::log1p(-p));
    if (pk * config.n_sim < 5 || tail * config.n_sim < 10) break;
    expected.push_back(pk * config.n_sim);
    counts.push_back(observed[k]);
    tail -= pk;
  }
  double rest = 0;
  for (auto& [k, v] : observed)
    if (k >= static_cast<long>(counts.size())) rest += v;
  expected.push_back(tail * config.n_sim);
  counts.push_back(rest);
  double stat = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) stat += std::pow(counts[i] - expected[i], 2) / expected[i];
  ASSERT_GE(counts.size(), 4u);
  boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
  EXPECT_GT(boost::math::cdf(boost::math::complement(dist, stat)), 0.01) << "chi2 = " << stat;
}

TEST(Simulate, RiskWindowRateRatio) {
  SimConfig config;
  config.n_sim = 200000;
  config.n_days = 550;
  config.campaign_start_day = 1;
  config.d_immune = 0;
  config.rr_vacc = 3.24;
  config.p_event_year = 0.02;
  config.vaccine_type_dist = {1, 0, 0, 0};
  config.first_dose_curve.assign(config.campaign_length(), 0.0);
  config.first_dose_curve[0] = 1.0;
  const auto cohort = simulate_cohort(config, 23);
  double in_events = 0, out_events = 0, in_days = 0, out_days = 0;
  for (const auto& ind : cohort.individuals) {
    ASSERT_TRUE(ind.vaccination);
    ASSERT_EQ(ind.vaccination->dose1_day, 1);
    for (Day t : ind.event_days) (in_risk_window(*ind.vaccination, t, config.d_risk) ? in_events : out_events) += 1;
  }
  const double window_days = 2.0 * (config.d_risk + 1);
  in_days = config.n_sim * window_days;
  out_days = config.n_sim * (config.n_days - window_days);
  ASSERT_GE(in_days + out_days, 1e8);
  const double log_ratio = std::log((in_events / in_days) / (out_events / out_days));
  const double se = std::sqrt(1 / in_events + 1 / out_events);
  // The per-day probability scales exactly by rr, so the ratio of rates is rr.
  EXPECT_NEAR(log_ratio, std::log(3.24), 4 * se);
}

TEST(Simulate, AcceleratedPathMatchesDayLoop) {
  SimConfig config;
  config.n_sim = 4;
  config.n_days = 60;
  config.campaign_start_day = 15;
  config.d_risk = 5;
  config.d_immune = 6;
  config.rr_vacc = 4.0;
  config.p_event_year = 0.99;
  config.second_dose_gap_mrna = 10;
  config.second_dose_gap_az = 20;
  config.vaccine_type_dist = {0.4, 0.2, 0.3, 0.1};
  config.first_dose_curve = default_first_dose_curve(config.campaign_length(), {0.08, 15, 5});

  std::map<long, long> fast_events, slow_events, fast_window, slow_window, fast_dose, slow_dose, fast_first,
      slow_first;
  auto record = [&](const Cohort& c, auto& events, auto& window, auto& dose, auto& first) {
    long total = 0, in_window = 0;
    for (const auto& ind : c.individuals) {
      total += static_cast<long>(ind.event_days.size());
      if (!ind.event_days.empty()) ++first[ind.event_days.front()];
      if (!ind.vaccination) {
        ++dose[-1];
        continue;
      }
      ++dose[ind.vaccination->dose1_day];
      for (Day t : ind.event_days) in_window += in_risk_window(*ind.vaccination, t, config.d_risk);
    }
    ++events[total];
    ++window[in_window];
  };
  const int reps = 20000;
  for (int r = 0; r < reps; ++r) {
    record(simulate_cohort(config, 1000 + r), fast_events, fast_window, fast_dose, fast_first);
    record(simulate_cohort_daily(config, 900000 + r), slow_events, slow_window, slow_dose, slow_first);
  }
  // Four comparisons; Bonferroni over a 1e-3 family level.
  EXPECT_GT(homogeneity_p_value(fast_events, slow_events), 2.5e-4);
  EXPECT_GT(homogeneity_p_value(fast_window, slow_window), 2.5e-4);
  EXPECT_GT(homogeneity_p_value(fast_dose, slow_dose), 2.5e-4);
  EXPECT_GT(homogeneity_p_value(fast_first, slow_first), 2.5e-4);
}

TEST(Simulate, DefaultCohortLooksPlausible) {
  const auto config = SimConfig::defaults();
  auto small = config;
  small.n_sim = 100000;
  const auto cohort = simulate_cohort(small, 1);
  const double coverage = static_cast<double>(cohort.vaccinated_count()) / small.n_sim;
  EXPECT_NEAR(coverage, 0.75, 0.02);
}

}  // namespace
}  // namespace linksim
