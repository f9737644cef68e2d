#include "linksim/random.hpp"

#include <cmath>
#include <limits>

namespace linksim {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc909ULL;
  std::uint64_t i = 0;
  for (auto w : words) {
    h = splitmix64(h ^ splitmix64(w + i));
    ++i;
  }
  return h;
}

std::uint64_t cohort_seed(std::uint64_t master_seed, std::uint64_t replication) noexcept {
  return mix_seed({master_seed, static_cast<std::uint64_t>(Stream::Cohort), replication});
}

std::uint64_t perturbation_seed(std::uint64_t master_seed, std::uint64_t scenario_index,
                                std::uint64_t replication, Stream stream) noexcept {
  return mix_seed({master_seed, static_cast<std::uint64_t>(stream), scenario_index, replication});
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire's nearly-divisionless method.
  std::uint64_t x = engine_();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = engine_();
      m = static_cast<__uint128_t>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::geometric_failures(double p) {
  if (p >= 1.0) return 0.0;
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  // P(G >= k) = (1-p)^k, inverted with U on (0, 1].
  return std::floor(std::log(uniform_pos()) / std::log1p(-p));
}

}  // namespace linksim
