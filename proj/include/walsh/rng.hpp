#pragma once

// Deterministic random helpers.  The mt19937_64 engine output is fully
// specified by the standard; the distributions are not, so the few
// draws we need are derived from raw engine words.

#include <cstdint>
#include <random>

namespace walsh {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Independent stream for a numbered subtask (trial, family member).
  static Rng fork(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n), unbiased by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  double unit() {  // [0,1) with 53 bits
    return double(eng_() >> 11) * 0x1.0p-53;
  }

  int sign() { return (eng_() & 1) ? 1 : -1; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace walsh
