#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linksim/cohort.hpp"
#include "linksim/inference.hpp"

namespace linksim {

enum class Exposure : std::uint8_t { Baseline = 0, Risk1 = 1, Risk2 = 2 };

struct SccsInterval {
  Day length = 0;
  Exposure exposure = Exposure::Baseline;
  int events = 0;

  bool operator==(const SccsInterval&) const = default;
};

struct SccsCase {
  std::int64_t id = 0;
  std::vector<SccsInterval> intervals;
  Day observation_length = 0;

  bool operator==(const SccsCase&) const = default;
};

// Every individual with at least one event becomes a case observed over days
// 1..n_days. Risk intervals cover [dose, dose + d_risk] of mRNA doses; where
// the two windows overlap the dose-2 window takes the shared days. All events,
// recurrences included, are assigned to their containing interval.
std::vector<SccsCase> build_sccs_cases(const Cohort& cohort);

// Conditional (multinomial) likelihood fit: given a case's total events, each
// event falls in interval i with probability proportional to
// length_i * exp(beta . exposure_i). Throws std::invalid_argument when no case
// has both exposed and unexposed time.
FitResult fit_sccs(std::span<const SccsCase> cases, const NewtonOptions& options = {});

// Conditional log-likelihood at fixed coefficients.
double sccs_log_likelihood(std::span<const SccsCase> cases, double beta1, double beta2);

}  // namespace linksim
