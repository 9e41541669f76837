#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace urect {

/// Seeded random stream. Each operation invocation owns one named stream, so
/// reruns with the same seed are bit-identical and parallel tasks can carve
/// out independent streams by name.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream) : eng_(mix(seed, stream)) {}

  std::uint64_t raw() { return eng_(); }

  /// Uniform in [0, 1). Bit-deterministic (no distribution objects).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * unit(); }

  /// Log-uniform over [a, b], a, b > 0.
  double log_uniform(double a, double b) {
    return std::exp(uniform(std::log(a), std::log(b)));
  }

  /// Uniform integer in [0, n).
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(eng_() % n);
  }

  /// Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = unit();
    const double u2 = unit();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * M_PI * u2);
    have_spare_ = true;
    return mag * std::cos(2.0 * M_PI * u2);
  }

  /// Uniform point in the unit ball of R^dim (rejection from the cube).
  void in_unit_ball(int dim, double* out) {
    for (;;) {
      double norm2 = 0.0;
      for (int k = 0; k < dim; ++k) {
        out[k] = uniform(-1.0, 1.0);
        norm2 += out[k] * out[k];
      }
      if (norm2 <= 1.0) return;
    }
  }

  /// FNV-1a over the stream name folded into the numeric seed.
  static std::uint64_t mix(std::uint64_t seed, std::string_view stream) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : stream) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    h ^= seed + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace urect
