#pragma once

#include <optional>
#include <vector>

#include "urect/measure.hpp"

namespace urect {

/// A flatness coefficient together with the plane that achieves it.
struct BetaResult {
  double value = 0.0;           // dimensionless, >= 0
  Plane plane;
  Vec achieving_point;          // support point of the first sup
  std::optional<Vec> achieving_plane_point;  // plane point of the bilateral sup
  bool below_resolution = false;
  double grid_gap = 0.0;        // certified addition included in `value` (bilateral only)
};

struct FitOptions {
  int budget = 120;             // orientation refinement iterations
  std::uint64_t seed = 0;       // reserved; the optimizer is deterministic
  std::vector<Plane> warm_starts;
  std::size_t max_fit_points = 1u << 14;  // optimization subsample cap
};

/// Minimax (sup-distance) m-plane fit. PCA-seeded deterministic local search;
/// the result is never worse than the PCA plane or any warm start.
Plane minimax_fit(const std::vector<Vec>& points, int m, const FitOptions& opt = {});

/// Sup distance from the points to the plane.
double sup_dist(const std::vector<Vec>& points, const Plane& L, Eigen::Index* argmax = nullptr);

/// beta^(m) of an open ball: fitted-plane sup distance normalized by r(B).
BetaResult beta_m(const DiscreteMeasure& mu, const Ball& b, int m, const FitOptions& opt = {});

/// Bilateral beta of a ball: support-to-plane sup plus plane-to-support sup,
/// the latter certified over a grid on L within B (spacing <= r/64, covering
/// gap added to the value).
BetaResult bbeta(const DiscreteMeasure& mu, const Ball& b, const FitOptions& opt = {});

struct ProfileRow {
  double r = 0.0;
  BetaResult beta;
  BetaResult bilateral;
};

/// beta and bbeta at B(x, r) for each radius, sharing plane warm starts.
std::vector<ProfileRow> beta_profile(const DiscreteMeasure& mu, const Vec& x,
                                     const std::vector<double>& radii,
                                     const FitOptions& opt = {});

/// Minimax center (minimum enclosing ball) of a set of low-dimensional
/// vectors; exact midrange in one dimension, Badoiu-Clarkson otherwise.
Vec minimax_center(const Eigen::MatrixXd& rows, int iterations = 256);

}  // namespace urect
