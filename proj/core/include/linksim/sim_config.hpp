#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace linksim {

// Simulation day index. Day 1 is the first simulated day.
using Day = std::int32_t;

enum class VaccineType : std::uint8_t { BionTech = 0, Moderna = 1, AstraZeneca = 2, Janssen = 3 };

inline constexpr std::size_t kVaccineTypeCount = 4;

constexpr bool is_mrna(VaccineType type) noexcept {
  return type == VaccineType::BionTech || type == VaccineType::Moderna;
}

std::string_view to_string(VaccineType type) noexcept;

// Probability of each vaccine type, indexed by the VaccineType enumerator value.
using VaccineTypeDistribution = std::array<double, kVaccineTypeCount>;

// Published type mix; Janssen carries the 1e-5 rounding residual so the
// four values sum to one.
inline constexpr VaccineTypeDistribution kDefaultVaccineTypeDist{0.6777, 0.08083, 0.1993, 0.04217};

// All parameters of one simulated cohort.
struct SimConfig {
  std::int64_t n_sim = 770'000;
  Day n_days = 550;
  // First day on which first doses can be administered; the campaign starts
  // after 365 days.
  Day campaign_start_day = 366;
  Day d_risk = 21;
  Day d_immune = 42;
  double rr_vacc = 3.24;
  double p_event_year = 0.00016;
  // Per-day probability of a first dose, indexed by (day - campaign_start_day).
  // Must cover every campaign day up to n_days.
  std::vector<double> first_dose_curve;
  VaccineTypeDistribution vaccine_type_dist = kDefaultVaccineTypeDist;
  Day second_dose_gap_mrna = 42;
  Day second_dose_gap_az = 84;

  // Throws std::invalid_argument naming the offending field.
  void validate() const;

  // Number of campaign days in [campaign_start_day, n_days].
  [[nodiscard]] std::size_t campaign_length() const noexcept;

  // Days between doses for `type`, or nullopt for single-dose vaccines.
  [[nodiscard]] std::optional<Day> second_dose_gap(VaccineType type) const noexcept;

  // Reference study parameters with the bundled first-dose curve.
  static SimConfig defaults();

  bool operator==(const SimConfig&) const = default;
};

// Throws std::invalid_argument if any probability is outside [0,1] or the
// total differs from one by more than 1e-12.
void validate_vaccine_type_dist(const VaccineTypeDistribution& dist);

}  // namespace linksim
