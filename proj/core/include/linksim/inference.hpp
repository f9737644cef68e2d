#pragma once

#include <array>
#include <utility>

namespace linksim {

enum class CoefficientStatus {
  Estimated,
  // No exposed (or no unexposed) person-time: the coefficient carries no information.
  Unidentifiable,
  // Separation: the likelihood increases without bound along this coefficient.
  Diverged,
};

struct CoefficientEstimate {
  double log_effect = 0.0;
  double se = 0.0;
  double p_value = 1.0;
  double effect = 1.0;  // exp(log_effect)
  CoefficientStatus status = CoefficientStatus::Estimated;

  [[nodiscard]] bool usable() const noexcept { return status == CoefficientStatus::Estimated; }
};

// Two-coefficient fit: index 0 is the dose-1 risk window, index 1 dose 2.
struct FitResult {
  std::array<CoefficientEstimate, 2> coefficients{};
  bool converged = false;
  int iterations = 0;
  double log_likelihood = 0.0;

  [[nodiscard]] const CoefficientEstimate& dose(int d) const { return coefficients.at(static_cast<std::size_t>(d - 1)); }
};

struct NewtonOptions {
  int max_iterations = 50;
  double score_tolerance = 1e-8;
  double relative_loglik_tolerance = 1e-10;
  // |log effect| beyond this is reported as divergence.
  double divergence_bound = 10.0;
};

// Two-sided normal p-value of log_effect / se. Throws for se <= 0.
double wald_p(double log_effect, double se);

// Clopper-Pearson interval for a binomial proportion at confidence `level`.
std::pair<double, double> exact_binomial_ci(long successes, long n, double level = 0.95);

}  // namespace linksim
