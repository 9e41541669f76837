#include "urect/scans.hpp"

#include <cmath>

#include "urect/errors.hpp"
#include "urect/rng.hpp"

namespace urect {

namespace {
nlohmann::json vec_to_json(const Vec& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}
}  // namespace

std::vector<int> interior_support(const DiscreteMeasure& mu) {
  const Vec c = mu.centroid();
  double max_r = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    max_r = std::max(max_r, (mu.point(i) - c).norm());
  std::vector<int> out;
  const double cutoff = 0.5 * max_r;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if ((mu.point(i) - c).norm() <= cutoff) out.push_back(static_cast<int>(i));
  if (out.empty()) {
    for (std::size_t i = 0; i < mu.size(); ++i) out.push_back(static_cast<int>(i));
  }
  return out;
}

ADReport ad_check(const DiscreteMeasure& mu, const ADParams& p) {
  if (p.sample_count < 1) throw ParameterError("ad_check needs sample_count >= 1");
  if (!(p.r_min > 0.0 && p.r_min < p.r_max)) throw ParameterError("need 0 < r_min < r_max");

  ADReport rep;
  rep.c1_target = p.c1;
  rep.seed = p.seed;
  rep.resolution_floor = mu.resolution_floor();
  rep.resolution_floor_rel = 10.0 * rep.resolution_floor / p.r_min;
  rep.boundary_warning = p.r_max > mu.extent() / 4.0;

  Rng rng(p.seed, "ad_check");
  const auto centers = interior_support(mu);
  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = 0.0;
  for (int s = 0; s < p.sample_count; ++s) {
    const int ci = centers[rng.index(centers.size())];
    const double r = rng.log_uniform(p.r_min, p.r_max);
    const Vec x = mu.point(static_cast<std::size_t>(ci));
    const double ratio = mu.ball_mass(Ball(x, r)) / std::pow(r, mu.intrinsic_dim());
    if (ratio < rep.ratio_min) {
      rep.ratio_min = ratio;
      rep.worst_low = {x, r, ratio};
    }
    if (ratio > rep.ratio_max) {
      rep.ratio_max = ratio;
      rep.worst_high = {x, r, ratio};
    }
  }
  rep.pass = rep.ratio_max <= p.c1 && rep.ratio_min >= 1.0 / p.c1;
  return rep;
}

UniformityReport uniformity_scan(const DiscreteMeasure& mu, int samples, double r_min,
                                 double r_max, std::uint64_t seed) {
  if (samples < 2) throw ParameterError("uniformity_scan needs samples >= 2");
  if (!(r_min > 0.0 && r_min < r_max)) throw ParameterError("need 0 < r_min < r_max");

  UniformityReport rep;
  rep.seed = seed;
  rep.resolution_floor = mu.resolution_floor();
  rep.resolution_floor_rel = 10.0 * rep.resolution_floor / r_min;
  rep.boundary_warning = r_max > mu.extent() / 4.0;

  Rng rng(seed, "uniformity_scan");
  const auto centers = interior_support(mu);
  rep.table.reserve(static_cast<std::size_t>(samples));
  double sum = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int ci = centers[rng.index(centers.size())];
    const double r = rng.log_uniform(r_min, r_max);
    const Vec x = mu.point(static_cast<std::size_t>(ci));
    const double density = mu.ball_mass(Ball(x, r)) / std::pow(r, mu.intrinsic_dim());
    rep.table.push_back({x, r, density});
    sum += density;
  }
  rep.mean_density = sum / samples;
  double spread = 0.0;
  for (const auto& row : rep.table)
    spread = std::max(spread, std::abs(row.density - rep.mean_density) /
                                  std::max(rep.mean_density, 1e-300));
  rep.max_rel_deviation = spread;
  return rep;
}

nlohmann::json ADReport::to_json() const {
  return {
      {"operation", "ad_check"},
      {"params", {{"c1", c1_target}}},
      {"results",
       {{"ratio_min", ratio_min},
        {"ratio_max", ratio_max},
        {"pass", pass},
        {"worst_low", {{"x", vec_to_json(worst_low.x)}, {"r", worst_low.r}, {"ratio", worst_low.ratio}}},
        {"worst_high",
         {{"x", vec_to_json(worst_high.x)}, {"r", worst_high.r}, {"ratio", worst_high.ratio}}},
        {"boundary_warning", boundary_warning}}},
      {"resolution_floor", resolution_floor},
      {"resolution_floor_rel", resolution_floor_rel},
      {"seed", seed},
  };
}

nlohmann::json UniformityReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table)
    rows.push_back({{"x", vec_to_json(row.x)}, {"r", row.r}, {"density", row.density}});
  return {
      {"operation", "uniformity_scan"},
      {"params", nlohmann::json::object()},
      {"results",
       {{"mean_density", mean_density},
        {"max_rel_deviation", max_rel_deviation},
        {"boundary_warning", boundary_warning},
        {"table", rows}}},
      {"resolution_floor", resolution_floor},
      {"resolution_floor_rel", resolution_floor_rel},
      {"seed", seed},
  };
}

}  // namespace urect
