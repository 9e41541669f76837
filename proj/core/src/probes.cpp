#include "urect/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "urect/errors.hpp"
#include "urect/riesz.hpp"

namespace urect {

namespace {

// Strided subset of the support indices inside a ball, nearest-to-center
// first so the canonical candidate is tried before the rest.
std::vector<int> candidate_centers(const DiscreteMeasure& mu, const Ball& b, std::size_t cap) {
  auto inside = mu.support_in(b);
  if (inside.empty()) return inside;
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < inside.size(); ++i) {
    const double d = (mu.point(static_cast<std::size_t>(inside[i])) - b.center).squaredNorm();
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  std::swap(inside[0], inside[nearest]);
  std::vector<int> out = {inside[0]};
  const std::size_t stride = std::max<std::size_t>(1, (inside.size() + cap - 1) / cap);
  for (std::size_t i = 1; i < inside.size(); i += stride) out.push_back(inside[i]);
  return out;
}

}  // namespace

FlatBallResult find_flat_ball(const DiscreteMeasure& mu, const Ball& b, double eps,
                              double tau_floor, int m) {
  if (m < 0) m = mu.intrinsic_dim();
  const auto centers = candidate_centers(mu, b, 64);
  FlatBallResult res;
  for (int k = 1; std::ldexp(1.0, -k) >= tau_floor; ++k) {
    const double radius = std::ldexp(b.radius, -k);
    for (int ci : centers) {
      const Vec c = mu.point(static_cast<std::size_t>(ci));
      if ((c - b.center).norm() + radius > b.radius) continue;  // B' must sit inside B
      try {
        const auto beta = beta_m(mu, Ball(c, radius), m);
        if (beta.value <= eps) {
          res.found = true;
          res.ball = Ball(c, radius);
          res.center_index = ci;
          res.beta = beta.value;
          res.tau = radius / b.radius;
          return res;
        }
      } catch (const EmptyIntersectionError&) {
      }
    }
  }
  return res;
}

TouchingBallResult touching_ball(const DiscreteMeasure& mu, const Ball& b) {
  const int d = mu.dim();
  const double reach = b.radius / 4.0;
  const double step = b.radius / 16.0;
  if (mu.support_in(Ball(b.center, reach)).empty())
    throw DensityError("quarter ball holds no support to touch");

  // Lattice over (1/4)B; the winner is the center with the largest clearance.
  const int half = static_cast<int>(std::floor(reach / step));
  Vec best_center;
  double best_clear = 0.0;
  int best_near = -1;
  std::vector<int> iv(static_cast<std::size_t>(d), -half);
  Vec c(d);
  while (true) {
    bool in_reach = true;
    for (int k = 0; k < d; ++k) c[k] = b.center[k] + step * iv[static_cast<std::size_t>(k)];
    if ((c - b.center).norm() > reach) in_reach = false;
    if (in_reach) {
      int near = -1;
      const double clear = mu.dist_to_support(c, &near);
      if (clear > best_clear) {
        best_clear = clear;
        best_center = c;
        best_near = near;
      }
    }
    int k = 0;
    for (; k < d; ++k) {
      if (++iv[static_cast<std::size_t>(k)] <= half) break;
      iv[static_cast<std::size_t>(k)] = -half;
    }
    if (k == d) break;
  }
  if (best_clear < b.radius / 32.0)
    throw DensityError("no support-free ball above the radius floor in (1/4)B");

  TouchingBallResult res;
  res.empty_ball = Ball(best_center, best_clear);
  res.z0 = mu.point(static_cast<std::size_t>(best_near));
  res.outward = (best_center - res.z0).normalized();
  // Tangent hyperplane at z0, orthogonal to the outward normal.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd(res.outward));
  const Eigen::MatrixXd q = qr.householderQ();
  res.tangent = Plane(res.z0, q.rightCols(d - 1));
  return res;
}

TouchPairingResult touch_pairing_probe(const DiscreteMeasure& mu, const Ball& b,
                                       const ProbeConfig& cfg) {
  if (!(cfg.kappa > 0.0 && cfg.kappa < 1.0)) throw ParameterError("need kappa in (0,1)");
  const double r0 = cfg.kappa * b.radius;
  const double factor = 2.0 / cfg.eps;
  if (factor * r0 > b.radius)
    throw ParameterError("annulus ladder is empty: kappa too large for eps");

  TouchPairingResult res;
  res.touch = touching_ball(mu, b);
  res.beta_d_minus_1 = beta_m(mu, b, mu.dim() - 1).value;
  res.hypothesis_met = res.beta_d_minus_1 > cfg.delta;

  const auto xs = candidate_centers(mu, Ball(res.touch.z0, r0), 64);
  for (double rj = factor * r0; rj <= b.radius; rj *= factor) {
    double rung = 0.0;
    for (int xi : xs) {
      const Vec x = mu.point(static_cast<std::size_t>(xi));
      rung = std::max(rung, std::abs(riesz_pairing(mu, x, res.touch.z0, r0, rj)));
    }
    res.ladder.emplace_back(rj, rung);
    res.max_pairing = std::max(res.max_pairing, rung);
  }
  res.reached_M = res.max_pairing >= cfg.M;
  return res;
}

DescentResult dimension_descent(const DiscreteMeasure& mu, const Ball& b, int m, double eps,
                                const ProbeConfig& cfg) {
  if (!(m > mu.intrinsic_dim() && m <= mu.dim()))
    throw ParameterError("descent needs n < m <= d");
  DescentResult res;
  // m == d: the whole space is an m-plane, the hypothesis is vacuous.
  const Plane L = m == mu.dim()
                      ? Plane::axis_aligned(b.center, m)
                      : [&] {
                          const auto bm = beta_m(mu, b, m);
                          res.beta_m_value = bm.value;
                          return bm.plane;
                        }();
  res.hypothesis_met = res.beta_m_value <= cfg.delta;
  if (!res.hypothesis_met) return res;

  const DiscreteMeasure projected = mu.restrict(b).project_pushforward(L);
  const auto flat = find_flat_ball(projected, Ball(L.project(b.center), b.radius), eps,
                                   cfg.tau / 16.0, m - 1);
  if (!flat.found) return res;

  // Lift: recenter on the original pre-image of the projected center point
  // and re-measure beta^(m-1) on the unprojected measure.
  const auto original = mu.restrict(b);
  res.ball = Ball(original.point(static_cast<std::size_t>(flat.center_index)), flat.ball.radius);
  res.beta_lower = beta_m(mu, res.ball, m - 1).value;
  res.found = true;
  return res;
}

BilateralProbeResult flat_to_bilateral_probe(const DiscreteMeasure& mu, const Vec& x, double r,
                                             double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("need delta in (0,1)");
  const double big = r / delta;
  if (big > mu.extent()) throw ExtentError("enlarged ball exceeds the data extent");
  BilateralProbeResult res;
  res.beta_large = beta_m(mu, Ball(x, big), mu.intrinsic_dim()).value;
  res.hypothesis_met = res.beta_large <= delta * delta;
  res.bilateral_small = bbeta(mu, Ball(x, r));
  return res;
}

StabilityResult stability_probe(const DiscreteMeasure& mu, const Ball& b, const ProbeConfig& cfg) {
  if (std::ldexp(b.radius, cfg.N) > mu.extent())
    throw ExtentError("ladder top exceeds the data extent");
  StabilityResult res;
  res.hypothesis_met = true;
  FitOptions fit;
  for (int k = 1; k <= cfg.N; ++k) {
    const double rk = std::ldexp(b.radius, k);
    const auto beta = beta_m(mu, Ball(b.center, rk), mu.intrinsic_dim(), fit);
    res.ladder.emplace_back(rk, beta.value);
    if (beta.value > cfg.delta0) res.hypothesis_met = false;
    fit.warm_starts = {beta.plane};
  }
  res.bilateral = bbeta(mu, b, fit);
  return res;
}

PersistenceResult persistence_probe(const DiscreteMeasure& mu, const Ball& b, double delta,
                                    double eta, int samples) {
  PersistenceResult res;
  res.beta_value = beta_m(mu, b, mu.intrinsic_dim()).value;
  res.hypothesis_met = res.beta_value <= delta;
  if (!res.hypothesis_met) return res;

  const Ball half(b.center, b.radius / 2.0);
  const auto centers = candidate_centers(mu, half, static_cast<std::size_t>(std::max(1, samples / 5)));
  const double floor_r = 8.0 * mu.resolution_floor();
  for (int ci : centers) {
    const Vec c = mu.point(static_cast<std::size_t>(ci));
    for (int k = 2; k <= 6; ++k) {
      const double radius = std::ldexp(b.radius, -k);
      if (radius < floor_r) break;
      if ((c - half.center).norm() + radius > half.radius) continue;  // B' inside (1/2)B
      const Ball sub(c, radius);
      const auto bi = bbeta(mu, sub);
      ++res.total;
      if (bi.value <= eta) {
        ++res.compliant;
      } else if (bi.value > res.worst_bbeta) {
        res.worst_bbeta = bi.value;
        res.worst = sub;
      }
    }
  }
  res.fraction = res.total == 0 ? 1.0 : static_cast<double>(res.compliant) / res.total;
  return res;
}

BpgResult bpg_check(const DiscreteMeasure& mu, const Ball& b, double M) {
  const auto inside = mu.support_in(b);
  if (inside.empty()) throw EmptyIntersectionError("ball misses the support");
  std::vector<Vec> pts;
  pts.reserve(inside.size());
  for (int i : inside) pts.push_back(mu.point(static_cast<std::size_t>(i)));

  BpgResult res;
  res.slope = M;
  res.plane = minimax_fit(pts, mu.intrinsic_dim(), {});

  // Bucket by projected cell, keep the lowest-index point per cell. The cell
  // stays below the point spacing so deduplication only merges coincident
  // samples, never distinct support mass.
  const double h = mu.resolution_floor();
  const double cell = h > 0.0 ? std::min(b.radius / 128.0, 0.45 * h) : b.radius / 128.0;
  std::map<std::vector<long>, int> buckets;
  for (std::size_t s = 0; s < pts.size(); ++s) {
    const Vec u = res.plane.coords(pts[s]);
    std::vector<long> key(static_cast<std::size_t>(u.size()));
    for (Eigen::Index k = 0; k < u.size(); ++k)
      key[static_cast<std::size_t>(k)] = static_cast<long>(std::floor(u[k] / cell));
    buckets.emplace(std::move(key), static_cast<int>(s));
  }

  // Greedy selection preserving the M-Lipschitz partial-graph property.
  std::vector<Eigen::VectorXd> sel_u, sel_w;
  double selected_mass = 0.0;
  for (const auto& [key, s] : buckets) {
    const Vec u = res.plane.coords(pts[static_cast<std::size_t>(s)]);
    const Vec w = res.plane.residual(pts[static_cast<std::size_t>(s)]);
    bool ok = true;
    for (std::size_t q = 0; q < sel_u.size(); ++q) {
      if ((w - sel_w[q]).norm() > M * (u - sel_u[q]).norm() + 1e-9) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    sel_u.push_back(u);
    sel_w.push_back(w);
    res.selected.push_back(inside[static_cast<std::size_t>(s)]);
    selected_mass += mu.weight(static_cast<std::size_t>(inside[static_cast<std::size_t>(s)]));
  }
  res.theta = selected_mass / mu.ball_mass(b);
  return res;
}

}  // namespace urect
