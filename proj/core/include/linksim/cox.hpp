#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linksim/cohort.hpp"
#include "linksim/inference.hpp"

namespace linksim {

// One (start, stop] interval of a subject's follow-up with constant covariates.
struct CountingProcessRow {
  std::int64_t subject = 0;
  Day start = 0;  // exclusive
  Day stop = 0;   // inclusive
  bool event = false;
  bool x1 = false;  // dose-1 risk window
  bool x2 = false;  // dose-2 risk window

  bool operator==(const CountingProcessRow&) const = default;
};

// Follow-up runs from `origin` (day 0 by default) to the first event after
// the origin (event row) or n_days (censored). Rows split where an mRNA risk
// window opens or closes: x1 covers (dose1_day - 1, dose1_day + d_risk],
// x2 likewise.
std::vector<CountingProcessRow> build_counting_process(const Cohort& cohort, Day origin = 0);

enum class TieMethod { Efron, Breslow };

// Maximum partial-likelihood fit of h(t) = h0(t) exp(b1 x1 + b2 x2).
// Throws std::invalid_argument when there is no event or a row has start >= stop.
FitResult fit_cox(std::span<const CountingProcessRow> rows, TieMethod ties = TieMethod::Efron,
                  const NewtonOptions& options = {});

// Log partial likelihood at a fixed coefficient vector (no fitting).
double cox_log_partial_likelihood(std::span<const CountingProcessRow> rows, double beta1, double beta2,
                                  TieMethod ties = TieMethod::Efron);

}  // namespace linksim
