#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linksim/random.hpp"
#include "linksim/sim_config.hpp"

namespace linksim {

struct VaccinationRecord {
  Day dose1_day = 0;
  std::optional<Day> dose2_day;
  VaccineType type = VaccineType::BionTech;

  bool operator==(const VaccinationRecord&) const = default;
};

struct IndividualRecord {
  std::int64_t id = 0;
  std::optional<VaccinationRecord> vaccination;
  // Strictly increasing; consecutive entries differ by more than d_immune.
  std::vector<Day> event_days;

  bool operator==(const IndividualRecord&) const = default;
};

struct Cohort {
  std::vector<IndividualRecord> individuals;
  SimConfig config;
  std::uint64_t seed = 0;

  [[nodiscard]] std::size_t vaccinated_count() const noexcept;
  [[nodiscard]] std::size_t event_count() const noexcept;

  bool operator==(const Cohort&) const = default;
};

// 1 - (1 - p_year)^(1/365). Throws std::invalid_argument outside [0,1].
double annual_to_daily_probability(double p_year);

VaccineType sample_vaccine_type(const VaccineTypeDistribution& dist, Rng& rng);

// Second-dose day under the configured gaps; nullopt for Janssen. Doses past
// `n_days` are never administered and also yield nullopt.
std::optional<Day> schedule_second_dose(VaccineType type, Day dose1_day, const SimConfig& config);

// True iff `record` is an mRNA vaccination and t lies in [dose, dose + d_risk]
// for either dose.
bool in_risk_window(const VaccinationRecord& record, Day t, Day d_risk) noexcept;

// Cohort generator. Each individual is simulated independently; first-dose
// days are drawn by inverting the cumulative first-dose distribution and
// event days by geometric waiting times within constant-probability
// segments. Identical (config, seed) gives an identical cohort.
Cohort simulate_cohort(const SimConfig& config, std::uint64_t seed);

// Literal day-by-day Bernoulli loop over (day, individual). Orders of
// magnitude slower than simulate_cohort; kept as the reference the
// accelerated path is checked against.
Cohort simulate_cohort_daily(const SimConfig& config, std::uint64_t seed);

// FNV-1a digest of the cohort's records (ids, vaccinations, events).
std::uint64_t cohort_fingerprint(const Cohort& cohort) noexcept;

}  // namespace linksim
