#include "linksim/inference.hpp"

#include <boost/math/distributions/beta.hpp>
#include <cmath>
#include <stdexcept>

namespace linksim {

double wald_p(double log_effect, double se) {
  if (!(se > 0.0)) throw std::invalid_argument("wald_p: standard error must be > 0");
  const double z = std::abs(log_effect / se);
  return std::erfc(z / std::sqrt(2.0));
}

std::pair<double, double> exact_binomial_ci(long successes, long n, double level) {
  if (n < 1 || successes < 0 || successes > n) {
    throw std::invalid_argument("exact_binomial_ci: need 0 <= successes <= n and n >= 1");
  }
  if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("exact_binomial_ci: level must lie in (0,1)");
  const double tail = (1.0 - level) / 2.0;
  const auto x = static_cast<double>(successes);
  const auto total = static_cast<double>(n);
  double low = 0.0;
  double high = 1.0;
  if (successes > 0) {
    low = boost::math::quantile(boost::math::beta_distribution<double>(x, total - x + 1.0), tail);
  }
  if (successes < n) {
    high = boost::math::quantile(boost::math::beta_distribution<double>(x + 1.0, total - x), 1.0 - tail);
  }
  return {low, high};
}

}  // namespace linksim
