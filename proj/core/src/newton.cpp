#include "newton.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace linksim::detail {

namespace {

// Inverse of the information restricted to the active coefficients.
// Returns false when the restricted matrix is not positive definite.
bool invert_active(const Mat2& info, std::array<bool, 2> active, Mat2& inv) {
  inv = Mat2{};
  if (active[0] && active[1]) {
    const double det = info[0][0] * info[1][1] - info[0][1] * info[1][0];
    if (!(det > 0.0) || !(info[0][0] > 0.0) || !std::isfinite(det)) return false;
    inv[0][0] = info[1][1] / det;
    inv[1][1] = info[0][0] / det;
    inv[0][1] = -info[0][1] / det;
    inv[1][0] = -info[1][0] / det;
    return true;
  }
  for (std::size_t j = 0; j < 2; ++j) {
    if (!active[j]) continue;
    if (!(info[j][j] > 0.0) || !std::isfinite(info[j][j])) return false;
    inv[j][j] = 1.0 / info[j][j];
  }
  return true;
}

double max_abs_score(const Vec2& score, std::array<bool, 2> active) {
  double m = 0.0;
  for (std::size_t j = 0; j < 2; ++j) {
    if (active[j]) m = std::max(m, std::abs(score[j]));
  }
  return m;
}

}  // namespace

FitResult maximize(const Objective& objective, std::array<bool, 2> active, const NewtonOptions& options) {
  FitResult result;
  for (std::size_t j = 0; j < 2; ++j) {
    if (!active[j]) {
      result.coefficients[j].status = CoefficientStatus::Unidentifiable;
      result.coefficients[j].log_effect = std::numeric_limits<double>::quiet_NaN();
      result.coefficients[j].se = std::numeric_limits<double>::quiet_NaN();
      result.coefficients[j].p_value = std::numeric_limits<double>::quiet_NaN();
      result.coefficients[j].effect = std::numeric_limits<double>::quiet_NaN();
    }
  }

  Vec2 beta{0.0, 0.0};
  Evaluation current = objective(beta);
  bool converged = !active[0] && !active[1];
  int iter = 0;
  Mat2 inv{};

  while (!converged && iter < options.max_iterations) {
    if (max_abs_score(current.score, active) < options.score_tolerance) {
      converged = true;
      break;
    }
    if (!invert_active(current.information, active, inv)) break;
    Vec2 step{};
    for (std::size_t j = 0; j < 2; ++j) {
      if (!active[j]) continue;
      step[j] = inv[j][0] * (active[0] ? current.score[0] : 0.0) + inv[j][1] * (active[1] ? current.score[1] : 0.0);
    }
    ++iter;

    Vec2 candidate{beta[0] + step[0], beta[1] + step[1]};
    Evaluation next = objective(candidate);
    for (int halving = 0; halving < 40 && !(next.loglik >= current.loglik); ++halving) {
      step[0] *= 0.5;
      step[1] *= 0.5;
      candidate = {beta[0] + step[0], beta[1] + step[1]};
      next = objective(candidate);
    }
    if (!(next.loglik >= current.loglik)) break;

    const double change = std::abs(next.loglik - current.loglik);
    beta = candidate;
    current = next;
    if (change <= options.relative_loglik_tolerance * std::max(std::abs(current.loglik), 1e-300)) {
      converged = true;
    }
  }

  result.converged = converged;
  result.iterations = iter;
  result.log_likelihood = current.loglik;

  const bool invertible = invert_active(current.information, active, inv);
  for (std::size_t j = 0; j < 2; ++j) {
    if (!active[j]) continue;
    auto& c = result.coefficients[j];
    c.log_effect = beta[j];
    c.effect = std::exp(beta[j]);
    c.se = invertible && inv[j][j] > 0.0 ? std::sqrt(inv[j][j]) : std::numeric_limits<double>::quiet_NaN();
    c.p_value = std::isfinite(c.se) && c.se > 0.0 ? wald_p(c.log_effect, c.se) : std::numeric_limits<double>::quiet_NaN();
    const bool diverged = !converged || !std::isfinite(c.se) || std::abs(beta[j]) > options.divergence_bound;
    c.status = diverged ? CoefficientStatus::Diverged : CoefficientStatus::Estimated;
  }
  return result;
}

}  // namespace linksim::detail
