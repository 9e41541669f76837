#pragma once

#include <json.hpp>
#include <string>

#include "urect/flatness.hpp"
#include "urect/measure.hpp"

namespace urect {

/// CSV with header `x0,...,x{d-1},weight`; the weight column is optional on
/// read. Weightless clouds get uniform weights chosen so the ball density
/// mu(B(x,r))/r^n is ~1 at a reference scale (extent/8).
DiscreteMeasure read_csv(const std::string& path, int intrinsic_dim);
void write_csv(const std::string& path, const DiscreteMeasure& mu);

/// JSON document {d, n, points, weights}; weights optional on read.
DiscreteMeasure read_json(const std::string& path);
void write_json(const std::string& path, const DiscreteMeasure& mu);

DiscreteMeasure read_cloud(const std::string& path, int intrinsic_dim);

/// Report envelope: {operation, params, results, resolution_floor, seed}.
nlohmann::json make_report(const std::string& operation, nlohmann::json params,
                           nlohmann::json results, double resolution_floor, std::uint64_t seed);
void write_report(const std::string& path, const nlohmann::json& report);

/// Shortest-round-trip decimal for a double (deterministic across runs).
std::string format_double(double v);

/// CSV side table `r,beta,bbeta,below_resolution` for a flatness profile.
void write_profile_csv(const std::string& path, const std::vector<ProfileRow>& rows);

}  // namespace urect
