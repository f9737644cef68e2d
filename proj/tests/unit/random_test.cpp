#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "linksim/random.hpp"

namespace linksim {
namespace {

TEST(SeedMixing, DeterministicAndOrderSensitive) {
  EXPECT_EQ(mix_seed({1, 2, 3}), mix_seed({1, 2, 3}));
  EXPECT_NE(mix_seed({1, 2, 3}), mix_seed({3, 2, 1}));
  EXPECT_NE(mix_seed({0}), mix_seed({0, 0}));
}

TEST(SeedMixing, CohortSeedIgnoresScenarioButPerturbationSeedDoesNot) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t rep = 0; rep < 1000; ++rep) seen.insert(cohort_seed(42, rep));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_NE(perturbation_seed(42, 0, 5, Stream::MissingMatch), perturbation_seed(42, 1, 5, Stream::MissingMatch));
  EXPECT_NE(perturbation_seed(42, 0, 5, Stream::MissingMatch), perturbation_seed(42, 0, 5, Stream::FalseMatch));
}

TEST(Rng, UniformStaysInUnitInterval) {
  Rng rng(7);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform_pos();
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 1.0);
  }
}

TEST(Rng, BelowIsUniform) {
  Rng rng(11);
  std::vector<int> counts(7, 0);
  const int draws = 700000;
  for (int i = 0; i < draws; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, draws / 7.0, 4 * std::sqrt(draws / 7.0));
}

TEST(Rng, GeometricFailuresMatchesMeanAndEdgeCases) {
  Rng rng(3);
  const double p = 0.2;
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) sum += rng.geometric_failures(p);
  const double mean = (1 - p) / p;
  const double sd = std::sqrt((1 - p) / (p * p));
  EXPECT_NEAR(sum / n, mean, 4 * sd / std::sqrt(n));
  EXPECT_EQ(rng.geometric_failures(1.0), 0.0);
  EXPECT_TRUE(std::isinf(rng.geometric_failures(0.0)));
}

}  // namespace
}  // namespace linksim
