#pragma once

#include <cstdint>

namespace urect {

/// Free parameters shared by the lemma probes and scans. Defaults are
/// code-path-exercising choices, not values with independent authority.
struct ProbeConfig {
  double eps = 0.1;
  double delta = 0.05;
  double delta0 = 0.05;
  double delta1 = 0.05;
  double eta = 0.2;
  double tau = 0.25;
  double kappa = 1.0 / 32.0;
  double tau0 = 0.1;
  int N = 8;
  double M = 10.0;
  double c1 = 4.0;
  std::uint64_t seed = 0;
  int samples = 100;
};

}  // namespace urect
