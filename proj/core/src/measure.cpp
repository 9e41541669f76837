#include "urect/measure.hpp"

#include <algorithm>
#include <cmath>

#include "urect/errors.hpp"

namespace urect {

DiscreteMeasure::DiscreteMeasure(int ambient_dim, int intrinsic_dim, Eigen::MatrixXd points,
                                 Eigen::VectorXd weights, std::string provenance)
    : d_(ambient_dim),
      n_(intrinsic_dim),
      points_(std::move(points)),
      weights_(std::move(weights)),
      provenance_(std::move(provenance)) {
  if (d_ <= 0 || n_ <= 0 || n_ > d_) throw ParameterError("need 0 < n <= d");
  if (points_.rows() == 0) throw ParameterError("empty measure");
  if (points_.cols() != d_) throw ParameterError("point dimension mismatch");
  if (weights_.size() != points_.rows()) throw ParameterError("weight count mismatch");
  if (!points_.allFinite()) throw ParameterError("non-finite point coordinates");
  if ((weights_.array() <= 0.0).any()) throw ParameterError("weights must be strictly positive");
  total_mass_ = 0.0;
  for (Eigen::Index i = 0; i < weights_.size(); ++i) total_mass_ += weights_[i];

  centroid_ = points_.colwise().mean();
  index_ = std::make_shared<KdTree>(points_);

  // Farthest-point heuristic for the support spread.
  double best = -1.0;
  Eigen::Index far0 = 0;
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    const double di = (points_.row(i).transpose() - centroid_).norm();
    if (di > best) {
      best = di;
      far0 = i;
    }
  }
  best = -1.0;
  Eigen::Index far1 = far0;
  for (Eigen::Index i = 0; i < points_.rows(); ++i) {
    const double di = (points_.row(i) - points_.row(far0)).norm();
    if (di > best) {
      best = di;
      far1 = i;
    }
  }
  extent_ = (points_.row(far1) - points_.row(far0)).norm();

  // Resolution floor: median nearest-neighbor spacing (strided subsample on
  // large clouds).
  const std::size_t n_pts = size();
  const std::size_t max_samples = 1u << 16;
  const std::size_t stride = std::max<std::size_t>(1, n_pts / max_samples);
  std::vector<double> spacings;
  spacings.reserve(n_pts / stride + 1);
  for (std::size_t i = 0; i < n_pts; i += stride) {
    const double s = index_->nn_spacing(static_cast<int>(i));
    if (std::isfinite(s)) spacings.push_back(s);
  }
  std::nth_element(spacings.begin(), spacings.begin() + spacings.size() / 2, spacings.end());
  resolution_floor_ = spacings.empty() ? 0.0 : spacings[spacings.size() / 2];
}

double DiscreteMeasure::ball_mass(const Ball& b) const {
  const auto idx = index_->ball(b.center, b.radius);
  double sum = 0.0;
  for (int i : idx) sum += weights_[i];
  return sum;
}

double DiscreteMeasure::dist_to_support(const Vec& x, int* nearest_index) const {
  double dist = 0.0;
  const int i = index_->nearest(x, &dist);
  if (nearest_index) *nearest_index = i;
  return dist;
}

DiscreteMeasure DiscreteMeasure::restrict(const Ball& b) const {
  const auto idx = support_in(b);
  if (idx.empty()) throw EmptyIntersectionError("restriction ball misses the support");
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(idx.size()), d_);
  Eigen::VectorXd w(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    pts.row(static_cast<Eigen::Index>(i)) = points_.row(idx[i]);
    w[static_cast<Eigen::Index>(i)] = weights_[idx[i]];
  }
  return DiscreteMeasure(d_, n_, std::move(pts), std::move(w), provenance_ + "|restrict");
}

DiscreteMeasure DiscreteMeasure::project_pushforward(const Plane& L) const {
  if (L.m() < n_ || L.m() > d_) throw ParameterError("plane dimension must satisfy n <= m <= d");
  L.check_basis();
  Eigen::MatrixXd pts(points_.rows(), d_);
  for (Eigen::Index i = 0; i < points_.rows(); ++i)
    pts.row(i) = L.project(points_.row(i).transpose()).transpose();
  return DiscreteMeasure(d_, n_, std::move(pts), weights_, provenance_ + "|project");
}

DiscreteMeasure DiscreteMeasure::blowdown(const Vec& x, double r) const {
  if (r <= 0.0) throw ParameterError("blowdown scale must be positive");
  Eigen::MatrixXd pts(points_.rows(), d_);
  for (Eigen::Index i = 0; i < points_.rows(); ++i)
    pts.row(i) = (points_.row(i).transpose() - x).transpose() / r;
  const double scale = std::pow(r, -n_);
  return DiscreteMeasure(d_, n_, std::move(pts), weights_ * scale, provenance_ + "|blowdown");
}

double support_distance(const DiscreteMeasure& nu, const DiscreteMeasure& sigma, const Ball& b) {
  const auto in_nu = nu.support_in(b);
  const auto in_sigma = sigma.support_in(b);
  if (in_nu.empty() || in_sigma.empty())
    throw EmptyIntersectionError("support_distance: a support is disjoint from the ball");
  double sup1 = 0.0;
  for (int i : in_nu) sup1 = std::max(sup1, sigma.dist_to_support(nu.point(i)));
  double sup2 = 0.0;
  for (int i : in_sigma) sup2 = std::max(sup2, nu.dist_to_support(sigma.point(i)));
  return sup1 + sup2;
}

}  // namespace urect
