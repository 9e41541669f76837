#include "urect/kdtree.hpp"

#include <algorithm>
#include <cmath>

namespace urect {

KdTree::KdTree(const Eigen::MatrixXd& points)
    : n_(static_cast<std::size_t>(points.rows())), d_(static_cast<int>(points.cols())) {
  data_.resize(n_ * static_cast<std::size_t>(d_));
  for (std::size_t i = 0; i < n_; ++i)
    for (int k = 0; k < d_; ++k) data_[i * d_ + k] = points(static_cast<Eigen::Index>(i), k);
  order_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) order_[i] = static_cast<int>(i);
  if (n_ > 0) {
    nodes_.reserve(2 * n_ / kLeafSize + 4);
    root_ = build(0, static_cast<int>(n_), 0);
  }
}

int KdTree::build(int begin, int end, int depth) {
  Node node;
  node.begin = begin;
  node.end = end;
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(node);
  if (end - begin <= kLeafSize) {
    std::sort(order_.begin() + begin, order_.begin() + end);
    return id;
  }
  // Split along the widest axis at the median.
  int axis = 0;
  double best_spread = -1.0;
  for (int k = 0; k < d_; ++k) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = begin; i < end; ++i) {
      const double v = pt(order_[i])[k];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      axis = k;
    }
  }
  const int mid = (begin + end) / 2;
  std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                   [&](int a, int b) {
                     const double va = pt(a)[axis], vb = pt(b)[axis];
                     return va < vb || (va == vb && a < b);
                   });
  const double split = pt(order_[mid])[axis];
  const int left = build(begin, mid, depth + 1);
  const int right = build(mid, end, depth + 1);
  nodes_[id].axis = axis;
  nodes_[id].split = split;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double KdTree::dist2(int i, const Eigen::VectorXd& c) const {
  const double* p = pt(i);
  double s = 0.0;
  for (int k = 0; k < d_; ++k) {
    const double diff = p[k] - c[k];
    s += diff * diff;
  }
  return s;
}

void KdTree::search_ball(int node_id, const Eigen::VectorXd& c, double r, bool strict,
                         std::vector<int>& out) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    const double r2 = r * r;
    for (int i = node.begin; i < node.end; ++i) {
      const double d2 = dist2(order_[i], c);
      if (strict ? d2 < r2 : d2 <= r2) out.push_back(order_[i]);
    }
    return;
  }
  const double delta = c[node.axis] - node.split;
  if (delta <= r) search_ball(node.left, c, r, strict, out);
  if (-delta <= r) search_ball(node.right, c, r, strict, out);
}

std::vector<int> KdTree::ball(const Eigen::VectorXd& center, double r, bool strict_open) const {
  std::vector<int> out;
  if (root_ >= 0 && r > 0.0) search_ball(root_, center, r, strict_open, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> KdTree::annulus(const Eigen::VectorXd& center, double lo, double hi) const {
  std::vector<int> out;
  if (root_ < 0) return out;
  std::vector<int> outer;
  search_ball(root_, center, hi, /*strict=*/false, outer);
  const double lo2 = lo * lo;
  for (int i : outer)
    if (dist2(i, center) > lo2) out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

void KdTree::search_nearest(int node_id, const Eigen::VectorXd& c, int skip, int& best,
                            double& best_d2) const {
  const Node& node = nodes_[node_id];
  if (node.axis < 0) {
    for (int i = node.begin; i < node.end; ++i) {
      const int idx = order_[i];
      if (idx == skip) continue;
      const double d2 = dist2(idx, c);
      if (d2 < best_d2 || (d2 == best_d2 && idx < best)) {
        best_d2 = d2;
        best = idx;
      }
    }
    return;
  }
  const double delta = c[node.axis] - node.split;
  const int near = delta <= 0.0 ? node.left : node.right;
  const int far = delta <= 0.0 ? node.right : node.left;
  search_nearest(near, c, skip, best, best_d2);
  if (delta * delta <= best_d2) search_nearest(far, c, skip, best, best_d2);
}

int KdTree::nearest(const Eigen::VectorXd& center, double* dist_out, int skip) const {
  int best = -1;
  double best_d2 = std::numeric_limits<double>::infinity();
  if (root_ >= 0) search_nearest(root_, center, skip, best, best_d2);
  if (dist_out) *dist_out = best >= 0 ? std::sqrt(best_d2) : best_d2;
  return best;
}

double KdTree::nn_spacing(int i) const {
  Eigen::VectorXd c(d_);
  for (int k = 0; k < d_; ++k) c[k] = pt(i)[k];
  double dist = 0.0;
  nearest(c, &dist, i);
  return dist;
}

}  // namespace urect
