#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>

#include "urect/geometry.hpp"
#include "urect/kdtree.hpp"

namespace urect {

/// Weighted point cloud in R^d with intrinsic dimension n and a spatial index.
/// Immutable after construction; all queries are read-only.
class DiscreteMeasure {
 public:
  DiscreteMeasure(int ambient_dim, int intrinsic_dim, Eigen::MatrixXd points,
                  Eigen::VectorXd weights, std::string provenance = {});

  int dim() const { return d_; }
  int intrinsic_dim() const { return n_; }
  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  const Eigen::MatrixXd& points() const { return points_; }
  Vec point(std::size_t i) const { return points_.row(static_cast<Eigen::Index>(i)); }
  double weight(std::size_t i) const { return weights_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd& weights() const { return weights_; }
  double total_mass() const { return total_mass_; }
  const KdTree& index() const { return *index_; }
  const std::string& provenance() const { return provenance_; }

  /// Median nearest-neighbor spacing of the support (the resolution floor h).
  /// For clouds above 2^16 points the median is taken over a deterministic
  /// stride subsample.
  double resolution_floor() const { return resolution_floor_; }

  /// Sum of weights over the open ball (ordered reduction, deterministic).
  double ball_mass(const Ball& b) const;

  /// Support point indices inside the open ball, ascending.
  std::vector<int> support_in(const Ball& b) const { return index_->ball(b.center, b.radius); }

  /// Distance from x to the support; index of the nearest support point via out-param.
  double dist_to_support(const Vec& x, int* nearest_index = nullptr) const;

  Vec centroid() const { return centroid_; }
  /// Measured support spread: distance between two farthest-point-heuristic
  /// extremes. Within a factor sqrt(3) of the true diameter, used only to
  /// normalize scales.
  double extent() const { return extent_; }

  DiscreteMeasure restrict(const Ball& b) const;
  DiscreteMeasure project_pushforward(const Plane& L) const;
  DiscreteMeasure blowdown(const Vec& x, double r) const;

 private:
  int d_ = 0;
  int n_ = 0;
  Eigen::MatrixXd points_;
  Eigen::VectorXd weights_;
  std::string provenance_;
  double total_mass_ = 0.0;
  double resolution_floor_ = 0.0;
  Vec centroid_;
  double extent_ = 0.0;
  std::shared_ptr<const KdTree> index_;
};

/// d_B(nu, sigma): two-sided sup of nearest-neighbor distances restricted to B.
double support_distance(const DiscreteMeasure& nu, const DiscreteMeasure& sigma, const Ball& b);

}  // namespace urect
