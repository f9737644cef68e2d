#include "linksim/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace linksim {

namespace {

void require_proportion(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
  }
}

}  // namespace

void ErrorSpec::validate() const {
  require_proportion(p_missing_match, "p_missing_match");
  require_proportion(p_false_match, "p_false_match");
}

std::size_t missing_match_count(double p, std::size_t n_vaccinated) {
  require_proportion(p, "p_missing_match");
  return static_cast<std::size_t>(std::llround(p * static_cast<double>(n_vaccinated)));
}

std::size_t false_match_pairs(double p, std::size_t n_individuals) {
  require_proportion(p, "p_false_match");
  return static_cast<std::size_t>(std::floor(p * static_cast<double>(n_individuals) / 2.0));
}

std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw std::invalid_argument("cannot sample more items than available");
  std::vector<std::size_t> out;
  out.reserve(k);
  if (k * 16 < n) {
    // Rejection against a hash set: expected draws stay close to k when k << n.
    std::unordered_set<std::size_t> taken;
    taken.reserve(2 * k);
    while (out.size() < k) {
      const auto candidate = static_cast<std::size_t>(rng.below(n));
      if (taken.insert(candidate).second) out.push_back(candidate);
    }
    return out;
  }
  // Partial Fisher-Yates.
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
  return out;
}

Cohort inject_missing_matches(Cohort cohort, double p, Rng& rng, MissingMatchBase base) {
  require_proportion(p, "p_missing_match");
  std::vector<std::size_t> vaccinated;
  for (std::size_t i = 0; i < cohort.individuals.size(); ++i) {
    if (cohort.individuals[i].vaccination) vaccinated.push_back(i);
  }
  const auto k = base == MissingMatchBase::Vaccinated
                     ? missing_match_count(p, vaccinated.size())
                     : std::min(missing_match_count(p, cohort.individuals.size()), vaccinated.size());
  if (k == 0) return cohort;
  for (auto pick : sample_without_replacement(vaccinated.size(), k, rng)) {
    cohort.individuals[vaccinated[pick]].vaccination.reset();
  }
  return cohort;
}

Cohort inject_false_matches(Cohort cohort, double p, Rng& rng) {
  require_proportion(p, "p_false_match");
  const auto pairs = false_match_pairs(p, cohort.individuals.size());
  if (pairs == 0) return cohort;
  const auto picks = sample_without_replacement(cohort.individuals.size(), 2 * pairs, rng);
  for (std::size_t j = 0; j < pairs; ++j) {
    std::swap(cohort.individuals[picks[2 * j]].vaccination, cohort.individuals[picks[2 * j + 1]].vaccination);
  }
  return cohort;
}

Cohort apply_linkage_errors(Cohort cohort, const ErrorSpec& errors, Rng& missing_rng, Rng& false_rng) {
  errors.validate();
  cohort = inject_missing_matches(std::move(cohort), errors.p_missing_match, missing_rng, errors.missing_base);
  return inject_false_matches(std::move(cohort), errors.p_false_match, false_rng);
}

}  // namespace linksim
