#pragma once

#include <cstddef>
#include <vector>

#include "linksim/cohort.hpp"
#include "linksim/random.hpp"

namespace linksim {

// Population the missing-match proportion is taken of. Either way only
// vaccinated individuals lose a record.
enum class MissingMatchBase {
  Vaccinated,  // round(p * n_vaccinated) records removed
  Population,  // min(round(p * n_sim), n_vaccinated) records removed
};

// Proportions of the two record-linkage error types.
struct ErrorSpec {
  double p_missing_match = 0.0;
  // Fraction of all individuals involved in a vaccination-record swap.
  double p_false_match = 0.0;
  MissingMatchBase missing_base = MissingMatchBase::Vaccinated;

  void validate() const;
};

// Number of vaccinated records removed: round-half-away-from-zero of p * n_vaccinated.
std::size_t missing_match_count(double p, std::size_t n_vaccinated);

// Number of swapped pairs: floor(p * n / 2).
std::size_t false_match_pairs(double p, std::size_t n_individuals);

// k distinct indices drawn uniformly from [0, n), in draw order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

// Removes the vaccination record of missing_match_count(p, n_vaccinated)
// uniformly chosen vaccinated individuals (or, with base Population, of
// min(round(p * n_sim), n_vaccinated) of them). Event histories are untouched.
Cohort inject_missing_matches(Cohort cohort, double p, Rng& rng,
                              MissingMatchBase base = MissingMatchBase::Vaccinated);

// Swaps the (possibly absent) vaccination records within
// false_match_pairs(p, n_sim) disjoint, uniformly chosen pairs.
Cohort inject_false_matches(Cohort cohort, double p, Rng& rng);

// Missing matches first, then false matches, each from its own stream.
Cohort apply_linkage_errors(Cohort cohort, const ErrorSpec& errors, Rng& missing_rng, Rng& false_rng);

}  // namespace linksim
