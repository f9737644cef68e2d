#pragma once

#include <array>
#include <functional>

#include "linksim/inference.hpp"

namespace linksim::detail {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

// Log-likelihood, score and observed information at a point.
struct Evaluation {
  double loglik = 0.0;
  Vec2 score{};
  Mat2 information{};
};

using Objective = std::function<Evaluation(const Vec2& beta)>;

// Newton-Raphson with step halving over the coefficients flagged active;
// inactive coefficients stay at zero. Fills log-effects, Wald statistics,
// and statuses of the active coefficients.
FitResult maximize(const Objective& objective, std::array<bool, 2> active, const NewtonOptions& options);

}  // namespace linksim::detail
