#pragma once

#include <compare>
#include <json.hpp>
#include <optional>
#include <set>
#include <vector>

#include "urect/cubes.hpp"

namespace urect {

struct CubeId {
  int j = 0;
  int ordinal = 0;
  auto operator<=>(const CubeId&) const = default;
};

/// A set of cube ids within one forest.
struct CubeFamily {
  std::set<CubeId> ids;

  bool contains(CubeId id) const { return ids.count(id) > 0; }
  void insert(CubeId id) { ids.insert(id); }
  std::size_t size() const { return ids.size(); }
};

/// Sum of masses of family cubes contained in R (member-set inclusion,
/// R counts as contained in itself).
double carleson_sum(const CubeForest& forest, const CubeFamily& family, CubeId R);

struct CarlesonReport {
  double max_ratio = 0.0;
  CubeId offender;
  double target_c = 0.0;
  bool pass = false;
  std::vector<std::pair<int, double>> per_generation_max;  // (root generation, max ratio)

  nlohmann::json to_json() const;
};

/// Sup over all roots R of carleson_sum / mass(R), compared to c.
CarlesonReport carleson_check(const CubeForest& forest, const CubeFamily& family, double c);

struct WCDMembership {
  bool member = false;
  double deviation = 0.0;  // sup_{y,t} |lambda mu(B(y,t)) - t^n|, mass units
  double lambda = 0.0;
};

/// Constant-density surrogate membership at (x, r): fits a scalar lambda so
/// sigma = lambda * mu has near-density t^n over a sampled (y, t) grid;
/// member iff the minimized deviation is <= eps * r^n.
WCDMembership wcd_membership(const DiscreteMeasure& mu, const Vec& x, double r, double eps);

struct WCDResult {
  struct Row {
    Vec x;
    double r = 0.0, deviation = 0.0, lambda = 0.0;
    bool member = false;
    CubeId id;
  };
  std::vector<Row> rows;                               // one per cube
  std::vector<std::pair<CubeId, double>> root_sums;    // normalized complement sums
  std::vector<std::pair<int, double>> per_generation_max;
  double max_root_sum = 0.0;
  bool bounded = false;   // max_root_sum within the packing budget c1p
  double eps = 0.0, c1p = 0.0;

  nlohmann::json to_json() const;
};

/// Per-cube surrogate membership at (z_Q, side), plus for every root the
/// normalized complement sum Sum mu(Q) log2 / mu(R) over non-member cubes.
WCDResult wcd_scan(const DiscreteMeasure& mu, const CubeForest& forest, double eps, double c1p);

/// Flags Q when some candidate measure from the dictionary {fitted n-planes;
/// posed cones for (d,n)=(4,3)} is within eps * r(B_Q) of mu in B_Q, in the
/// two-sided support-distance sense. Candidates are dense samples at
/// resolution <= eps * r(B_Q) / 4.
CubeFamily neps_flags(const DiscreteMeasure& mu, const CubeForest& forest, double eps);

struct Tree {
  CubeId root;
  std::set<CubeId> members;
  std::set<CubeId> stop;
  std::optional<CubeId> pb;  // a parent-or-brother witness outside the flag set
};

/// Corona decomposition of the flagged cubes under R: roots by maximal side
/// length (lexicographic tie-break), growth rule "all sons flagged -> all
/// sons join", Stop = members whose sons are not all members (bottom
/// generation included).
std::vector<Tree> tree_decompose(const CubeForest& forest, const CubeFamily& flags, CubeId R);

struct TreeStructureReport {
  bool disjoint = false;
  bool coverage = false;   // union of trees == flags intersect D(R)
  bool coherent = false;
  bool sibling_ok = false;
  bool stop_ok = false;
  bool all_ok() const { return disjoint && coverage && coherent && sibling_ok && stop_ok; }
};

TreeStructureReport validate_trees(const std::vector<Tree>& trees, const CubeForest& forest,
                                   const CubeFamily& flags, CubeId R);

struct TreePackingReport {
  double root_mass_sum = 0.0;
  double mass_R = 0.0;
  double ratio = 0.0;                  // Sum mu(Q(T_i)) / mu(R)
  double complement_constant = 0.0;    // Carleson sum at R of the complement witness family
  double bound = 0.0;                  // 1 + complement_constant
  bool pass_packing = false;
  TreeStructureReport structure;

  nlohmann::json to_json() const;
};

/// Checks Sum mu(roots) <= (1 + complement Carleson constant) * mu(R) and
/// re-validates the tree structure exactly. `complement` must be
/// D(R) minus the flag set the trees were built from.
TreePackingReport tree_packing_check(const std::vector<Tree>& trees, const CubeForest& forest,
                                     CubeId R, const CubeFamily& complement);

/// All cubes contained in R (including R), ordered (j, ordinal).
std::vector<CubeId> descendants(const CubeForest& forest, CubeId R);

}  // namespace urect
