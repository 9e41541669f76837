#pragma once

#include <optional>
#include <vector>

#include "urect/flatness.hpp"
#include "urect/measure.hpp"
#include "urect/probe_config.hpp"

namespace urect {

struct FlatBallResult {
  bool found = false;
  Ball ball;
  int center_index = -1;  // support index of the ball center
  double beta = 0.0;
  double tau = 0.0;       // r(ball) / r(search ball)
};

/// Searches sub-balls of B (candidate centers: a strided net of supp within B;
/// radii: dyadic fractions of r(B) down to tau_floor) for beta^(m) <= eps.
/// Returns the largest-radius success; m < 0 means the intrinsic dimension.
FlatBallResult find_flat_ball(const DiscreteMeasure& mu, const Ball& b, double eps,
                              double tau_floor, int m = -1);

struct TouchingBallResult {
  Ball empty_ball;   // contains no support point
  Vec z0;            // touching support point, |z0 - center| = radius
  Plane tangent;     // hyperplane at z0 orthogonal to z0 - center
  Vec outward;       // unit vector from z0 into the empty ball
};

/// Grid-searches centers in (1/4)B for the maximal support-free ball and
/// dilates it exactly to the nearest support point. Throws DensityError when
/// no empty ball of radius >= r(B)/32 exists (e.g. full-dimensional support).
TouchingBallResult touching_ball(const DiscreteMeasure& mu, const Ball& b);

struct TouchPairingResult {
  bool hypothesis_met = false;  // beta^(d-1)(B) above cfg.delta (non-flat)
  double beta_d_minus_1 = 0.0;
  double max_pairing = 0.0;
  bool reached_M = false;
  std::vector<std::pair<double, double>> ladder;  // (outer radius, max |pairing|)
  TouchingBallResult touch;
};

/// Evaluates |((x - z0)/(kappa r)) . R_{kappa r, r_j} mu(z0)| over support
/// points x within kappa r(B) of z0 and the radius ladder
/// r_j = (2/eps)^j kappa r(B), j >= 1, while r_j <= r(B).
TouchPairingResult touch_pairing_probe(const DiscreteMeasure& mu, const Ball& b,
                                       const ProbeConfig& cfg);

struct DescentResult {
  bool hypothesis_met = false;  // beta^(m)(B) <= cfg.delta
  double beta_m_value = 0.0;
  bool found = false;
  Ball ball;
  double beta_lower = 0.0;  // beta^(m-1) of the returned ball, on the original measure
};

/// Projects mu restricted to B onto the fitted m-plane, finds a flat ball of
/// one dimension lower in the projected measure, and reports beta^(m-1) of
/// the lifted ball on the original measure.
DescentResult dimension_descent(const DiscreteMeasure& mu, const Ball& b, int m, double eps,
                                const ProbeConfig& cfg = {});

struct BilateralProbeResult {
  bool hypothesis_met = false;  // beta at the delta^{-1}-enlarged ball <= delta^2
  double beta_large = 0.0;
  BetaResult bilateral_small;
};

BilateralProbeResult flat_to_bilateral_probe(const DiscreteMeasure& mu, const Vec& x, double r,
                                             double delta);

struct StabilityResult {
  bool hypothesis_met = false;  // all ladder values <= cfg.delta0
  std::vector<std::pair<double, double>> ladder;  // (2^k r, beta)
  BetaResult bilateral;
};

/// Evaluates beta(2^k B) for k = 1..N and the bilateral coefficient of B.
StabilityResult stability_probe(const DiscreteMeasure& mu, const Ball& b, const ProbeConfig& cfg);

struct PersistenceResult {
  bool hypothesis_met = false;  // beta(B) <= delta
  double beta_value = 0.0;
  int total = 0;
  int compliant = 0;
  double fraction = 0.0;
  Ball worst;
  double worst_bbeta = 0.0;
};

/// Samples sub-balls of (1/2)B centered in the support across dyadic radii
/// and reports the fraction with bilateral coefficient <= eta.
PersistenceResult persistence_probe(const DiscreteMeasure& mu, const Ball& b, double delta,
                                    double eta, int samples);

struct BpgResult {
  double theta = 0.0;          // selected mass / mu(B)
  double slope = 0.0;          // the Lipschitz bound M used
  Plane plane;
  std::vector<int> selected;   // support indices of the extracted graph
};

/// Greedy Lipschitz-graph extraction: buckets supp within B by projection to
/// the fitted plane (cell r(B)/128), keeps one representative per cell while
/// the selected set stays an M-Lipschitz partial graph over the plane.
BpgResult bpg_check(const DiscreteMeasure& mu, const Ball& b, double M);

}  // namespace urect
