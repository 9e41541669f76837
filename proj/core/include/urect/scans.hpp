#pragma once

#include <json.hpp>

#include "urect/measure.hpp"

namespace urect {

/// Scale range and target constant for an AD-regularity check.
struct ADParams {
  double c1 = 4.0;
  double r_min = 0.0;
  double r_max = 0.0;
  int sample_count = 200;
  std::uint64_t seed = 0;
};

struct ADSample {
  Vec x;
  double r = 0.0;
  double ratio = 0.0;  // mu(B(x,r)) / r^n
};

struct ADReport {
  double c1_target = 0.0;
  double ratio_min = 0.0;   // extremal density ratios over the scan
  double ratio_max = 0.0;
  ADSample worst_low;
  ADSample worst_high;
  bool pass = false;
  bool boundary_warning = false;
  double resolution_floor = 0.0;      // h, in data units
  double resolution_floor_rel = 0.0;  // 10 h / r_min
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

/// Samples (x, r) over the support and [r_min, r_max] (log-uniform) and
/// reports the extremal ratios mu(B(x,r)) / r^n against c1.
ADReport ad_check(const DiscreteMeasure& mu, const ADParams& p);

struct UniformityRow {
  Vec x;
  double r = 0.0;
  double density = 0.0;  // mu(B(x,r)) / r^n
};

struct UniformityReport {
  double mean_density = 0.0;
  double max_rel_deviation = 0.0;  // spread around the mean
  std::vector<UniformityRow> table;
  bool boundary_warning = false;
  double resolution_floor = 0.0;
  double resolution_floor_rel = 0.0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

/// Density scan mu(B(x,r)) / r^n over random (x, r); the mean estimates c0.
UniformityReport uniformity_scan(const DiscreteMeasure& mu, int samples, double r_min,
                                 double r_max, std::uint64_t seed = 0);

/// Support points eligible as scan centers: within half the support
/// circumradius of the centroid, so analysis balls stay off the generation
/// boundary.
std::vector<int> interior_support(const DiscreteMeasure& mu);

}  // namespace urect
