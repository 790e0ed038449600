#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace schro {

// Stateless 64-bit mixer, used to derive independent seed streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seeded random source. The engine is std::mt19937_64 (its output sequence is
// pinned by the standard); all conversions to doubles, bounded integers and
// normal deviates are done here explicitly so that a given seed produces the
// same values on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Unbiased integer in [0, n), n >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t reject = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= reject) return x % n;
    }
  }

  int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  // Box-Muller; the spare deviate is discarded to keep the draw count per
  // call fixed.
  double normal(double mean = 0.0, double sigma = 1.0) {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    return mean + sigma * radius * std::cos(2.0 * std::numbers::pi * u2);
  }

  // Fisher-Yates using below(); deterministic for a given seed.
  template <typename Container>
  void shuffle(Container& c) {
    const std::size_t n = c.size();
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(c[i - 1], c[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace schro
