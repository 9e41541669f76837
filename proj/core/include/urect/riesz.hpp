#pragma once

#include <json.hpp>
#include <vector>

#include "urect/measure.hpp"
#include "urect/probe_config.hpp"

namespace urect {

struct RieszValue {
  Vec vector;
  double r = 0.0, s = 0.0;
};

/// Doubly truncated transform: sum over support points y with r < |z0-y| <= s
/// of weight * (z0-y)/|z0-y|^{n+1}. Exact ordered summation.
RieszValue riesz_truncated(const DiscreteMeasure& mu, const Vec& z0, double r, double s);

/// ((x - z0)/r) . riesz_truncated(mu, z0, r, s). Requires |x - z0| <= 2r.
double riesz_pairing(const DiscreteMeasure& mu, const Vec& x, const Vec& z0, double r, double s);

struct RieszScanRow {
  double r = 0.0, s = 0.0, ratio = 0.0, pairing = 0.0;
};

struct RieszScanReport {
  double sup_pairing = 0.0;
  Vec arg_x, arg_z0;
  double arg_r = 0.0, arg_s = 0.0;
  std::vector<std::pair<double, double>> growth;  // (s/r ratio, sup |pairing|)
  std::vector<RieszScanRow> rows;
  std::vector<std::string> warnings;
  double resolution_floor = 0.0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
};

/// Samples pairing tuples over decades of s/r and reports the sup and its
/// per-decade growth. Warns when the measure fails a quick uniformity scan.
RieszScanReport riesz_bound_scan(const DiscreteMeasure& mu, const ProbeConfig& cfg);

}  // namespace urect
