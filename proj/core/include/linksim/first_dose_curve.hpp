#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace linksim {

// Parameters of the bundled stand-in for the empirical first-dose curve:
//   q(k) = peak / (1 + exp(-(k - midpoint) / scale)),  k = days since campaign start.
// The defaults vaccinate about 75% of the cohort over a 185-day campaign.
struct LogisticRamp {
  double peak = 0.0175;
  double midpoint = 105.0;
  double scale = 18.0;
};

std::vector<double> default_first_dose_curve(std::size_t length, const LogisticRamp& ramp = {});

// Parses "day,probability" rows (header required) with days contiguous from 0.
// Throws std::runtime_error on I/O failure and std::invalid_argument on
// malformed content.
std::vector<double> load_first_dose_curve(const std::filesystem::path& path);
std::vector<double> parse_first_dose_curve(std::istream& in);

void write_first_dose_curve(std::ostream& out, const std::vector<double>& curve);

}  // namespace linksim
