#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace linksim {

// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Order-sensitive mix of a sequence of words into one seed:
// h = splitmix64(h ^ splitmix64(w + i)) folded over the words.
std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) noexcept;

// Stream tags used when deriving per-stage seeds of one replication.
enum class Stream : std::uint64_t {
  Cohort = 0x636f686f7274ULL,
  MissingMatch = 0x6d697373ULL,
  FalseMatch = 0x66616c7365ULL,
};

// Seed of the cohort simulated for replication `replication` of a run.
// Independent of the scenario so every scenario of a grid analyses the
// same underlying cohorts.
std::uint64_t cohort_seed(std::uint64_t master_seed, std::uint64_t replication) noexcept;

// Seed of one linkage-error stage for (scenario, replication).
std::uint64_t perturbation_seed(std::uint64_t master_seed, std::uint64_t scenario_index,
                                std::uint64_t replication, Stream stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Uniform integer on [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);

  // Number of failures before the first success of Bernoulli(p) trials,
  // returned as a double so that p -> 0 can yield +inf.
  double geometric_failures(double p);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace linksim
