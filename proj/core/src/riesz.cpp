#include "urect/riesz.hpp"

#include <cmath>

#include "urect/errors.hpp"
#include "urect/rng.hpp"
#include "urect/scans.hpp"

namespace urect {

RieszValue riesz_truncated(const DiscreteMeasure& mu, const Vec& z0, double r, double s) {
  if (!(r > 0.0 && r < s)) throw ParameterError("need 0 < r < s");
  RieszValue out;
  out.r = r;
  out.s = s;
  out.vector = Vec::Zero(mu.dim());
  const int n = mu.intrinsic_dim();
  for (int i : mu.index().annulus(z0, r, s)) {
    const Vec diff = z0 - mu.point(static_cast<std::size_t>(i));
    const double dist = diff.norm();
    out.vector += mu.weight(static_cast<std::size_t>(i)) * diff / std::pow(dist, n + 1);
  }
  return out;
}

double riesz_pairing(const DiscreteMeasure& mu, const Vec& x, const Vec& z0, double r, double s) {
  if ((x - z0).norm() > 2.0 * r)
    throw ParameterError("pairing point must satisfy |x - z0| <= 2r");
  return ((x - z0) / r).dot(riesz_truncated(mu, z0, r, s).vector);
}

RieszScanReport riesz_bound_scan(const DiscreteMeasure& mu, const ProbeConfig& cfg) {
  RieszScanReport rep;
  rep.seed = cfg.seed;
  rep.resolution_floor = mu.resolution_floor();

  const double h = mu.resolution_floor();
  const double r_lo = 20.0 * h;

  {
    const double u_hi = mu.extent() / 8.0;
    if (u_hi > 2.0 * r_lo) {
      const auto uni = uniformity_scan(mu, 30, r_lo, u_hi, cfg.seed);
      if (uni.max_rel_deviation > 0.25)
        rep.warnings.push_back("measure not approximately uniform at scanned scales");
    } else {
      rep.warnings.push_back("scale range too narrow for a uniformity precheck");
    }
  }

  Rng rng(cfg.seed, "riesz_bound_scan");
  const auto centers = interior_support(mu);
  for (const double ratio : {10.0, 100.0, 1000.0}) {
    const double r_hi = mu.extent() / (4.0 * ratio);
    if (r_hi <= r_lo) {
      rep.warnings.push_back("decade s/r = " + std::to_string(ratio) +
                             " skipped: below resolution");
      continue;
    }
    double decade_sup = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
      const Vec z0 = mu.point(static_cast<std::size_t>(centers[rng.index(centers.size())]));
      const double r = rng.log_uniform(r_lo, r_hi);
      const double s = ratio * r;
      const auto near = mu.index().ball(z0, 2.0 * r);
      if (near.empty()) continue;
      const Vec x = mu.point(static_cast<std::size_t>(near[rng.index(near.size())]));
      const double p = riesz_pairing(mu, x, z0, r, s);
      rep.rows.push_back({r, s, ratio, p});
      decade_sup = std::max(decade_sup, std::abs(p));
      if (std::abs(p) > rep.sup_pairing) {
        rep.sup_pairing = std::abs(p);
        rep.arg_x = x;
        rep.arg_z0 = z0;
        rep.arg_r = r;
        rep.arg_s = s;
      }
    }
    rep.growth.emplace_back(ratio, decade_sup);
  }
  return rep;
}

nlohmann::json RieszScanReport::to_json() const {
  nlohmann::json growth_rows = nlohmann::json::array();
  for (const auto& [ratio, sup] : growth) growth_rows.push_back({{"ratio", ratio}, {"sup", sup}});
  nlohmann::json argmax = nlohmann::json::object();
  if (arg_x.size() > 0) {
    nlohmann::json xj = nlohmann::json::array(), zj = nlohmann::json::array();
    for (Eigen::Index k = 0; k < arg_x.size(); ++k) xj.push_back(arg_x[k]);
    for (Eigen::Index k = 0; k < arg_z0.size(); ++k) zj.push_back(arg_z0[k]);
    argmax = {{"x", xj}, {"z0", zj}, {"r", arg_r}, {"s", arg_s}};
  }
  return {
      {"operation", "riesz_bound_scan"},
      {"params", nlohmann::json::object()},
      {"results",
       {{"sup_pairing", sup_pairing},
        {"argmax", argmax},
        {"growth", growth_rows},
        {"warnings", warnings}}},
      {"resolution_floor", resolution_floor},
      {"seed", seed},
  };
}

}  // namespace urect
