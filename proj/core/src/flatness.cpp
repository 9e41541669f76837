#include "urect/flatness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "urect/errors.hpp"

namespace urect {

namespace {

// Points as rows; shared by all evaluation helpers.
Eigen::MatrixXd as_matrix(const std::vector<Vec>& points) {
  const Eigen::Index k = static_cast<Eigen::Index>(points.size());
  const Eigen::Index d = points.empty() ? 0 : points.front().size();
  Eigen::MatrixXd m(k, d);
  for (Eigen::Index i = 0; i < k; ++i) m.row(i) = points[static_cast<std::size_t>(i)];
  return m;
}

// Orthonormal complement of the (orthonormal) columns of v.
Eigen::MatrixXd complement(const Eigen::MatrixXd& v) {
  const Eigen::Index d = v.rows();
  if (v.cols() == 0) return Eigen::MatrixXd::Identity(d, d);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(d - v.cols());
}

// Sup distance to the subspace with orientation v after choosing the offset
// minimaxing the normal-space residuals. Fills the optimal base point.
double oriented_objective(const Eigen::MatrixXd& pts, const Eigen::MatrixXd& v, Vec* base_out) {
  const Eigen::MatrixXd nrm = complement(v);
  const Eigen::MatrixXd y = pts * nrm;  // k x (d - m) normal coordinates
  const Vec c = minimax_center(y);
  const double val = (y.rowwise() - c.transpose()).rowwise().norm().maxCoeff();
  if (base_out) {
    Vec mean = pts.colwise().mean();
    // Offset is fixed in the normal space; keep the in-plane part at the mean
    // so the reported base sits near the data.
    *base_out = nrm * c + v * (v.transpose() * mean);
  }
  return val;
}

struct Candidate {
  Eigen::MatrixXd orientation;
  double value = std::numeric_limits<double>::infinity();
  Vec base;
};

Candidate evaluate(const Eigen::MatrixXd& pts, const Eigen::MatrixXd& v) {
  Candidate c;
  c.orientation = v;
  c.value = oriented_objective(pts, v, &c.base);
  return c;
}

Eigen::MatrixXd pca_orientation(const Eigen::MatrixXd& pts, int m) {
  const Vec mean = pts.colwise().mean();
  const Eigen::MatrixXd centered = pts.rowwise() - mean.transpose();
  const Eigen::MatrixXd cov = centered.transpose() * centered;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  // Eigen orders ascending; the top-m plane is the last m eigenvectors.
  return eig.eigenvectors().rightCols(m);
}

// Deterministic compass search over the tilt chart V(A) = orth(V0 + N0 A),
// A in R^{(d-m) x m}.
Candidate refine(const Eigen::MatrixXd& pts, Candidate start, int budget) {
  const Eigen::MatrixXd v0 = start.orientation;
  const Eigen::MatrixXd n0 = complement(v0);
  const Eigen::Index q = n0.cols();
  const Eigen::Index m = v0.cols();
  if (q == 0 || m == 0) return start;

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(q, m);
  Candidate best = start;
  double step = 0.25;
  for (int it = 0; it < budget && step > 1e-9; ++it) {
    bool improved = false;
    for (Eigen::Index r = 0; r < q; ++r) {
      for (Eigen::Index c = 0; c < m; ++c) {
        for (const double sgn : {1.0, -1.0}) {
          Eigen::MatrixXd trial = a;
          trial(r, c) += sgn * step;
          Eigen::MatrixXd v;
          try {
            v = orthonormalized(v0 + n0 * trial);
          } catch (const BasisError&) {
            continue;
          }
          Candidate cand = evaluate(pts, v);
          if (cand.value < best.value - 1e-15 * (1.0 + best.value)) {
            best = std::move(cand);
            a = trial;
            improved = true;
          }
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

// Exhaustive-then-local sweep of line orientations in the plane (d = 2,
// m = 1), the one chart where the Grassmannian is a circle.
Candidate circle_scan(const Eigen::MatrixXd& pts) {
  const int grid = 1024;
  Candidate best;
  double best_theta = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double theta = M_PI * i / grid;
    Eigen::MatrixXd v(2, 1);
    v << std::cos(theta), std::sin(theta);
    Candidate cand = evaluate(pts, v);
    if (cand.value < best.value) {
      best = std::move(cand);
      best_theta = theta;
    }
  }
  // Golden-section refinement around the winning angle.
  double lo = best_theta - M_PI / grid, hi = best_theta + M_PI / grid;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double t1 = hi - gr * (hi - lo);
    const double t2 = lo + gr * (hi - lo);
    Eigen::MatrixXd v1(2, 1), v2(2, 1);
    v1 << std::cos(t1), std::sin(t1);
    v2 << std::cos(t2), std::sin(t2);
    const double f1 = oriented_objective(pts, v1, nullptr);
    const double f2 = oriented_objective(pts, v2, nullptr);
    if (f1 <= f2)
      hi = t2;
    else
      lo = t1;
  }
  const double theta = 0.5 * (lo + hi);
  Eigen::MatrixXd v(2, 1);
  v << std::cos(theta), std::sin(theta);
  Candidate cand = evaluate(pts, v);
  return cand.value < best.value ? cand : best;
}

Eigen::MatrixXd subsample(const Eigen::MatrixXd& pts, std::size_t cap) {
  const std::size_t k = static_cast<std::size_t>(pts.rows());
  if (cap == 0 || k <= cap) return pts;
  const std::size_t stride = (k + cap - 1) / cap;
  Eigen::MatrixXd out(static_cast<Eigen::Index>((k + stride - 1) / stride), pts.cols());
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < k; i += stride) out.row(row++) = pts.row(static_cast<Eigen::Index>(i));
  return out.topRows(row);
}

std::vector<Vec> ball_points(const DiscreteMeasure& mu, const Ball& b) {
  const auto idx = mu.support_in(b);
  if (idx.empty()) throw EmptyIntersectionError("ball misses the support");
  std::vector<Vec> pts;
  pts.reserve(idx.size());
  for (int i : idx) pts.push_back(mu.point(static_cast<std::size_t>(i)));
  return pts;
}

}  // namespace

Vec minimax_center(const Eigen::MatrixXd& rows, int iterations) {
  if (rows.cols() == 0) return Vec(0);
  if (rows.rows() == 0) throw ParameterError("minimax_center of an empty set");
  if (rows.cols() == 1) {
    const double lo = rows.col(0).minCoeff();
    const double hi = rows.col(0).maxCoeff();
    Vec c(1);
    c[0] = 0.5 * (lo + hi);
    return c;
  }
  Vec c = rows.colwise().mean();
  for (int t = 1; t <= iterations; ++t) {
    Eigen::Index far = 0;
    (rows.rowwise() - c.transpose()).rowwise().squaredNorm().maxCoeff(&far);
    c += (Vec(rows.row(far)) - c) / (t + 1.0);
  }
  return c;
}

double sup_dist(const std::vector<Vec>& points, const Plane& L, Eigen::Index* argmax) {
  double best = 0.0;
  Eigen::Index best_i = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double d = L.dist(points[i]);
    if (d > best) {
      best = d;
      best_i = static_cast<Eigen::Index>(i);
    }
  }
  if (argmax) *argmax = best_i;
  return best;
}

Plane minimax_fit(const std::vector<Vec>& points, int m, const FitOptions& opt) {
  if (points.empty()) throw ParameterError("minimax_fit of an empty set");
  const int d = static_cast<int>(points.front().size());
  if (m < 0 || m >= d) throw ParameterError("fit dimension must satisfy 0 <= m < ambient");

  const Eigen::MatrixXd full = as_matrix(points);
  if (m == 0) {
    const Vec c = minimax_center(full);
    return Plane(c, Eigen::MatrixXd(d, 0));
  }

  const Eigen::MatrixXd work = subsample(full, opt.max_fit_points);

  Candidate best = evaluate(work, pca_orientation(work, m));
  for (const Plane& w : opt.warm_starts) {
    if (w.ambient() != d || w.m() != m) continue;
    Candidate cand = evaluate(work, w.basis);
    if (cand.value < best.value) best = std::move(cand);
  }
  if ((d - m) * m == 1) {
    Candidate cand = circle_scan(work);
    if (cand.value < best.value) best = std::move(cand);
  }
  best = refine(work, std::move(best), opt.budget);

  // Re-anchor the winning orientation, and every warm start verbatim, on the
  // full point set; the fit is contractually never worse than a warm start.
  Candidate final = evaluate(full, best.orientation);
  Plane result(final.base, final.orientation);
  double result_val = final.value;
  for (const Plane& w : opt.warm_starts) {
    if (w.ambient() != d || w.m() != m) continue;
    const double v = sup_dist(points, w);
    if (v < result_val) {
      result = w;
      result_val = v;
    }
  }
  return result;
}

BetaResult beta_m(const DiscreteMeasure& mu, const Ball& b, int m, const FitOptions& opt) {
  const auto pts = ball_points(mu, b);
  BetaResult res;
  res.plane = minimax_fit(pts, m, opt);
  Eigen::Index arg = 0;
  res.value = sup_dist(pts, res.plane, &arg) / b.radius;
  res.achieving_point = pts[static_cast<std::size_t>(arg)];
  res.below_resolution = res.value < 2.0 * mu.resolution_floor() / b.radius;
  return res;
}

namespace {

// Second bilateral term: sup over L cap B of the distance to the support,
// certified over a lattice of spacing s with the covering gap added.
double plane_to_support(const DiscreteMeasure& mu, const Ball& b, const Plane& L, double s,
                        double* gap_out, Vec* arg_out) {
  const int m = L.m();
  const double gap = 0.5 * s * std::sqrt(static_cast<double>(m));
  const Vec u0 = L.coords(b.center);
  const int half = static_cast<int>(std::ceil((b.radius + gap) / s)) + 1;

  double best = 0.0;
  Vec best_pt = L.lift(u0);
  std::vector<int> iv(static_cast<std::size_t>(m), -half);
  Vec u(m);
  while (true) {
    for (int k = 0; k < m; ++k) u[k] = u0[k] + s * iv[static_cast<std::size_t>(k)];
    const Vec y = L.lift(u);
    if ((y - b.center).norm() < b.radius + gap) {
      const double dist = mu.dist_to_support(y);
      if (dist > best) {
        best = dist;
        best_pt = y;
      }
    }
    int k = 0;
    for (; k < m; ++k) {
      if (++iv[static_cast<std::size_t>(k)] <= half) break;
      iv[static_cast<std::size_t>(k)] = -half;
    }
    if (k == m) break;
  }
  if (gap_out) *gap_out = gap;
  if (arg_out) *arg_out = best_pt;
  return best;
}

}  // namespace

BetaResult bbeta(const DiscreteMeasure& mu, const Ball& b, const FitOptions& opt) {
  const int m = mu.intrinsic_dim();
  if (m >= mu.dim())
    throw ParameterError("bilateral flatness needs intrinsic dim below ambient dim");
  const auto pts = ball_points(mu, b);

  // Candidate planes: the one-sided fit plus any warm starts; the reported
  // value is an upper bound for the bilateral infimum either way.
  std::vector<Plane> candidates;
  candidates.push_back(minimax_fit(pts, m, opt));
  for (const Plane& w : opt.warm_starts)
    if (w.ambient() == mu.dim() && w.m() == m) candidates.push_back(w);

  const double s = b.radius / 64.0;
  BetaResult res;
  res.value = std::numeric_limits<double>::infinity();
  for (const Plane& L : candidates) {
    Eigen::Index arg = 0;
    const double t1 = sup_dist(pts, L, &arg);
    double gap = 0.0;
    Vec plane_arg;
    const double t2 = plane_to_support(mu, b, L, s, &gap, &plane_arg);
    const double val = (t1 + t2 + gap) / b.radius;
    if (val < res.value) {
      res.value = val;
      res.plane = L;
      res.achieving_point = pts[static_cast<std::size_t>(arg)];
      res.achieving_plane_point = plane_arg;
      res.grid_gap = gap / b.radius;
    }
  }
  res.below_resolution = res.value < 2.0 * mu.resolution_floor() / b.radius;
  return res;
}

std::vector<ProfileRow> beta_profile(const DiscreteMeasure& mu, const Vec& x,
                                     const std::vector<double>& radii, const FitOptions& opt) {
  std::vector<ProfileRow> rows;
  rows.reserve(radii.size());
  FitOptions local = opt;
  for (double r : radii) {
    ProfileRow row;
    row.r = r;
    const Ball b(x, r);
    row.beta = beta_m(mu, b, mu.intrinsic_dim(), local);
    FitOptions bilateral_opt = local;
    bilateral_opt.warm_starts.push_back(row.beta.plane);
    row.bilateral = bbeta(mu, b, bilateral_opt);
    // Feed the fitted planes forward as warm starts for the next radius.
    local.warm_starts = opt.warm_starts;
    local.warm_starts.push_back(row.beta.plane);
    local.warm_starts.push_back(row.bilateral.plane);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace urect
