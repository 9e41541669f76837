#pragma once

#include <cmath>
#include <vector>

#include "urect/measure.hpp"
#include "urect/rng.hpp"

namespace test_helpers {

using urect::DiscreteMeasure;
using urect::Vec;

/// Uniform sample of a segment on the x-axis in R^2: `count` points with
/// spacing `spacing`, centered at the origin, weight == spacing each.
inline DiscreteMeasure make_line(int count, double spacing) {
  Eigen::MatrixXd pts(count, 2);
  const double x0 = -0.5 * spacing * (count - 1);
  for (int i = 0; i < count; ++i) {
    pts(i, 0) = x0 + spacing * i;
    pts(i, 1) = 0.0;
  }
  return DiscreteMeasure(2, 1, std::move(pts), Eigen::VectorXd::Constant(count, spacing));
}

/// side x side lattice on the plane x2 = 0 in R^3, spacing `spacing`,
/// weight == spacing^2 each.
inline DiscreteMeasure make_grid_plane(int side, double spacing) {
  Eigen::MatrixXd pts(side * side, 3);
  const double x0 = -0.5 * spacing * (side - 1);
  for (int i = 0; i < side; ++i)
    for (int j = 0; j < side; ++j) {
      const int row = i * side + j;
      pts(row, 0) = x0 + spacing * i;
      pts(row, 1) = x0 + spacing * j;
      pts(row, 2) = 0.0;
    }
  return DiscreteMeasure(3, 2, std::move(pts),
                         Eigen::VectorXd::Constant(side * side, spacing * spacing));
}

/// `count` points equally spaced on the circle of radius `radius` in R^2,
/// weight == arc length step.
inline DiscreteMeasure make_circle(int count, double radius) {
  Eigen::MatrixXd pts(count, 2);
  for (int i = 0; i < count; ++i) {
    const double th = 2.0 * M_PI * i / count;
    pts(i, 0) = radius * std::cos(th);
    pts(i, 1) = radius * std::sin(th);
  }
  const double w = 2.0 * M_PI * radius / count;
  return DiscreteMeasure(2, 1, std::move(pts), Eigen::VectorXd::Constant(count, w));
}

/// Random weighted cloud in the unit ball of R^d.
inline DiscreteMeasure make_random_cloud(int count, int d, int n, std::uint64_t seed) {
  urect::Rng rng(seed, "test-cloud");
  Eigen::MatrixXd pts(count, d);
  Eigen::VectorXd w(count);
  std::vector<double> buf(static_cast<std::size_t>(d));
  for (int i = 0; i < count; ++i) {
    rng.in_unit_ball(d, buf.data());
    for (int k = 0; k < d; ++k) pts(i, k) = buf[static_cast<std::size_t>(k)];
    w[i] = 0.5 + rng.unit();
  }
  return DiscreteMeasure(d, n, std::move(pts), std::move(w));
}

/// Independent minimax line oracle in R^2: scans `grid` directions over
/// [0, pi), takes the midrange offset in each (exact for fixed direction),
/// then golden-section refines the best angle. Returns the minimal sup
/// distance (half-width of the narrowest enclosing slab).
inline double oracle_minimax_line(const std::vector<Vec>& pts, int grid = 20000) {
  auto halfwidth = [&](double theta) {
    const double nx = -std::sin(theta), ny = std::cos(theta);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (const auto& p : pts) {
      const double v = nx * p[0] + ny * p[1];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return 0.5 * (hi - lo);
  };
  double best = std::numeric_limits<double>::infinity(), best_th = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double th = M_PI * i / grid;
    const double v = halfwidth(th);
    if (v < best) {
      best = v;
      best_th = th;
    }
  }
  // Golden-section refinement around the best grid angle.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = best_th - M_PI / grid, b = best_th + M_PI / grid;
  double c = b - phi * (b - a), d = a + phi * (b - a);
  for (int it = 0; it < 80; ++it) {
    if (halfwidth(c) < halfwidth(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - phi * (b - a);
    d = a + phi * (b - a);
  }
  return std::min(best, halfwidth(0.5 * (a + b)));
}

/// Applies a rigid motion x -> Q x + t to every point of the measure.
inline DiscreteMeasure rigid_motion(const DiscreteMeasure& mu, const Eigen::MatrixXd& Q,
                                    const Vec& t) {
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(mu.size()), mu.dim());
  for (std::size_t i = 0; i < mu.size(); ++i)
    pts.row(static_cast<Eigen::Index>(i)) = (Q * mu.point(i) + t).transpose();
  return DiscreteMeasure(mu.dim(), mu.intrinsic_dim(), std::move(pts), mu.weights());
}

inline Eigen::MatrixXd rotation2(double theta) {
  Eigen::MatrixXd Q(2, 2);
  Q << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return Q;
}

}  // namespace test_helpers
