#include "linksim/sim_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "linksim/cohort.hpp"
#include "linksim/first_dose_curve.hpp"

namespace linksim {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view to_string(VaccineType type) noexcept {
  switch (type) {
    case VaccineType::BionTech: return "BionTech";
    case VaccineType::Moderna: return "Moderna";
    case VaccineType::AstraZeneca: return "AstraZeneca";
    case VaccineType::Janssen: return "Janssen";
  }
  return "unknown";
}

void validate_vaccine_type_dist(const VaccineTypeDistribution& dist) {
  double total = 0.0;
  for (double p : dist) {
    require(is_probability(p), "vaccine_type_dist: probability outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("vaccine_type_dist: probabilities sum to " + std::to_string(total) +
                                ", expected 1");
  }
}

std::size_t SimConfig::campaign_length() const noexcept {
  if (n_days < campaign_start_day) return 0;
  return static_cast<std::size_t>(n_days - campaign_start_day + 1);
}

std::optional<Day> SimConfig::second_dose_gap(VaccineType type) const noexcept {
  switch (type) {
    case VaccineType::BionTech:
    case VaccineType::Moderna: return second_dose_gap_mrna;
    case VaccineType::AstraZeneca: return second_dose_gap_az;
    case VaccineType::Janssen: return std::nullopt;
  }
  return std::nullopt;
}

void SimConfig::validate() const {
  require(n_sim >= 1, "n_sim must be >= 1");
  require(n_days >= 1, "n_days must be >= 1");
  require(campaign_start_day >= 1, "campaign_start_day must be >= 1");
  require(n_days >= campaign_start_day, "n_days must be >= campaign_start_day");
  require(d_risk >= 0, "d_risk must be >= 0");
  require(d_immune >= 0, "d_immune must be >= 0");
  require(std::isfinite(rr_vacc) && rr_vacc > 0.0, "rr_vacc must be > 0");
  require(is_probability(p_event_year), "p_event_year must lie in [0,1]");
  require(second_dose_gap_mrna >= 1, "second_dose_gap_mrna must be >= 1");
  require(second_dose_gap_az >= 1, "second_dose_gap_az must be >= 1");
  require(annual_to_daily_probability(p_event_year) * rr_vacc <= 1.0,
          "daily event probability times rr_vacc exceeds 1");
  validate_vaccine_type_dist(vaccine_type_dist);
  if (first_dose_curve.size() < campaign_length()) {
    throw std::invalid_argument("first_dose_curve has " + std::to_string(first_dose_curve.size()) +
                                " entries but the campaign spans " + std::to_string(campaign_length()) +
                                " days");
  }
  for (double q : first_dose_curve) {
    require(is_probability(q), "first_dose_curve: probability outside [0,1]");
  }
}

SimConfig SimConfig::defaults() {
  SimConfig config;
  config.first_dose_curve = default_first_dose_curve(config.campaign_length());
  return config;
}

}  // namespace linksim
