#pragma once

#include <Eigen/Dense>
#include <vector>

#include "urect/errors.hpp"

namespace urect {

using Vec = Eigen::VectorXd;

/// Open ball B(center, radius).
struct Ball {
  Vec center;
  double radius = 0.0;

  Ball() = default;
  Ball(Vec c, double r) : center(std::move(c)), radius(r) {
    if (radius <= 0.0) throw ParameterError("ball radius must be positive");
  }

  bool contains(const Vec& x) const { return (x - center).norm() < radius; }
};

/// Affine m-plane in R^d: base point plus orthonormal basis (d x m).
struct Plane {
  Vec base;
  Eigen::MatrixXd basis;  // columns orthonormal

  static constexpr double kOrthoTol = 1e-10;

  Plane() = default;
  Plane(Vec base_pt, Eigen::MatrixXd dirs) : base(std::move(base_pt)), basis(std::move(dirs)) {
    check_basis();
  }

  int m() const { return static_cast<int>(basis.cols()); }
  int ambient() const { return static_cast<int>(base.size()); }

  void check_basis() const {
    const Eigen::MatrixXd gram = basis.transpose() * basis;
    const double err =
        (gram - Eigen::MatrixXd::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
    if (basis.cols() > 0 && err > kOrthoTol)
      throw BasisError("plane basis not orthonormal within tolerance");
  }

  Vec project(const Vec& x) const {
    if (m() == 0) return base;
    return base + basis * (basis.transpose() * (x - base));
  }

  double dist(const Vec& x) const { return (x - project(x)).norm(); }

  /// Component of x - base orthogonal to the plane.
  Vec residual(const Vec& x) const { return x - project(x); }

  /// In-plane coordinates of x relative to base.
  Vec coords(const Vec& x) const { return basis.transpose() * (x - base); }

  /// Point of the plane with the given in-plane coordinates.
  Vec lift(const Vec& u) const { return base + basis * u; }

  /// Axis-aligned m-plane through `base` spanned by coordinates [0, m).
  static Plane axis_aligned(Vec base_pt, int m_dims) {
    const int d = static_cast<int>(base_pt.size());
    Eigen::MatrixXd b = Eigen::MatrixXd::Zero(d, m_dims);
    for (int k = 0; k < m_dims; ++k) b(k, k) = 1.0;
    return Plane(std::move(base_pt), std::move(b));
  }
};

/// Orthonormalize columns in place (modified Gram-Schmidt); throws BasisError
/// if the columns are numerically dependent.
inline Eigen::MatrixXd orthonormalized(Eigen::MatrixXd dirs) {
  for (int j = 0; j < dirs.cols(); ++j) {
    for (int k = 0; k < j; ++k) dirs.col(j) -= dirs.col(k).dot(dirs.col(j)) * dirs.col(k);
    const double nrm = dirs.col(j).norm();
    if (nrm < 1e-12) throw BasisError("degenerate direction set");
    dirs.col(j) /= nrm;
  }
  return dirs;
}

}  // namespace urect
