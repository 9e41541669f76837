#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <vector>

namespace urect {

/// Static kd-tree over a point cloud (rows of an N x d matrix) supporting
/// open/closed ball range queries and nearest-neighbor lookups.
///
/// Range queries return indices in ascending order so that floating-point
/// reductions over the results are order-stable.
class KdTree {
 public:
  explicit KdTree(const Eigen::MatrixXd& points);

  std::size_t size() const { return n_; }
  int dim() const { return d_; }

  /// Indices i with |p_i - center| < r (strict_open) or <= r, ascending.
  std::vector<int> ball(const Eigen::VectorXd& center, double r, bool strict_open = true) const;

  /// Indices i with lo < |p_i - center| <= hi, ascending.
  std::vector<int> annulus(const Eigen::VectorXd& center, double lo, double hi) const;

  /// Nearest neighbor; `skip`, when >= 0, is an index to ignore (self-queries).
  int nearest(const Eigen::VectorXd& center, double* dist_out = nullptr, int skip = -1) const;

  /// Distance to the nearest neighbor of stored point i (excluding itself).
  double nn_spacing(int i) const;

 private:
  struct Node {
    int left = -1, right = -1;
    int axis = -1;          // -1 marks a leaf
    double split = 0.0;
    int begin = 0, end = 0; // index range into order_
  };

  int build(int begin, int end, int depth);
  void search_ball(int node, const Eigen::VectorXd& c, double r, bool strict,
                   std::vector<int>& out) const;
  void search_nearest(int node, const Eigen::VectorXd& c, int skip, int& best,
                      double& best_d2) const;
  const double* pt(int i) const { return data_.data() + static_cast<std::size_t>(i) * d_; }
  double dist2(int i, const Eigen::VectorXd& c) const;

  std::size_t n_ = 0;
  int d_ = 0;
  std::vector<double> data_;   // row-major copy
  std::vector<int> order_;     // permutation of [0, n)
  std::vector<Node> nodes_;
  int root_ = -1;
  static constexpr int kLeafSize = 16;
};

}  // namespace urect
