#pragma once

#include <json.hpp>
#include <vector>

#include "urect/measure.hpp"

namespace urect {

/// One dyadic cell of the support. Geometry lives in normalized units (the
/// cloud is rescaled so its measured diameter is in (2^{-j_min-1}, 2^{-j_min}]
/// before building); `CubeForest::scale` maps back to data units.
struct MuCube {
  int j = 0;        // generation; side() == 2^{-j}
  int ordinal = 0;  // index within the generation
  Vec center;       // a support point, normalized units
  int center_index = -1;         // support index of the center
  std::vector<int> members;      // ascending support indices
  int parent = -1;               // ordinal in generation j-1, or -1 at the top
  std::vector<int> children;     // ordinals in generation j+1
  double mass = 0.0;

  double side() const { return std::ldexp(1.0, -j); }
};

class CubeForest {
 public:
  int j_min() const { return j_min_; }
  int j_max() const { return j_max_; }
  double scale() const { return scale_; }  // normalized = scale * data

  const std::vector<MuCube>& generation(int j) const;
  std::vector<MuCube>& generation(int j);
  const MuCube& cube(int j, int ordinal) const { return generation(j).at(static_cast<std::size_t>(ordinal)); }
  std::size_t cube_count() const;

  std::size_t measure_size() const { return measure_size_; }
  double measure_mass() const { return measure_mass_; }
  /// Throws IdentityError unless mu matches the measure the forest was built from.
  void check_measure(const DiscreteMeasure& mu) const;

  /// The source measure mapped into the forest's normalized units
  /// (positions scaled, weights scaled by scale^n so densities transform).
  DiscreteMeasure normalized_measure(const DiscreteMeasure& mu) const;

  nlohmann::json to_json(bool with_members = false) const;

 private:
  friend CubeForest build_cubes(const DiscreteMeasure&, int, int);
  int j_min_ = 0, j_max_ = 0;
  double scale_ = 1.0;
  std::vector<std::vector<MuCube>> gens_;
  std::size_t measure_size_ = 0;
  double measure_mass_ = 0.0;
};

/// Builds the dyadic cell system for generations j_min..j_max: each parent
/// cell is bisected along its widest bounding-box axis at the midpoint until
/// every cell's bounding-box diagonal is at most 2^{-j}, so diam(Q) <= 2^{-j}
/// holds by construction. The center z_Q is the member nearest the cell's
/// bounding-box midpoint.
CubeForest build_cubes(const DiscreteMeasure& mu, int j_min, int j_max);

/// B_Q = B(z_Q, 3 * 2^{-j}), in normalized units.
Ball cube_ball(const MuCube& q);

struct AxiomReport {
  bool partition_ok = false;    // every generation partitions the support
  bool nesting_ok = false;      // children partition their parent exactly
  double diam_const = 0.0;      // max over cubes of a certified diam upper bound / side
  double mass_min = 0.0;        // extremes of mass / 2^{-jn}
  double mass_max = 0.0;
  double sep_const = 0.0;       // min over cubes of dist(z_Q, supp minus Q) / side

  nlohmann::json to_json() const;
};

AxiomReport verify_cube_axioms(const CubeForest& forest, const DiscreteMeasure& mu);

}  // namespace urect
