#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace sympack {

// Deterministic uniform/gaussian draws on top of mt19937_64. The standard
// distributions are implementation-defined, so the mapping from raw engine
// output to doubles is done by hand to keep results stable across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Log-uniform in [lo, hi), lo > 0.
  double log_uniform(double lo, double hi) {
    return lo * std::pow(hi / lo, uniform());
  }

  double gaussian() {
    // Box-Muller; spare value discarded for simplicity.
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643 * u2);
  }

  std::uint64_t raw() { return eng_(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return eng_() % n; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sympack
