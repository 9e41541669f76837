#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "urect/carleson.hpp"
#include "urect/errors.hpp"
#include "urect/generators.hpp"

using namespace urect;

namespace {

// Containment oracle independent of the parent pointers: member-set inclusion.
bool contained_oracle(const CubeForest& forest, CubeId q, CubeId r) {
  const auto& mq = forest.cube(q.j, q.ordinal).members;
  const auto& mr = forest.cube(r.j, r.ordinal).members;
  return std::includes(mr.begin(), mr.end(), mq.begin(), mq.end());
}

CubeFamily whole_generation(const CubeForest& forest, int j) {
  CubeFamily fam;
  for (const auto& q : forest.generation(j)) fam.insert({j, q.ordinal});
  return fam;
}

}  // namespace

TEST_CASE("one full generation under a root sums to the root mass") {
  const auto mu = test_helpers::make_grid_plane(32, 1.0 / 32.0);
  const auto forest = build_cubes(mu, 0, 3);
  const CubeId R{0, 0};
  const double mass_R = forest.cube(0, 0).mass;
  for (int j = 1; j <= 3; ++j)
    CHECK(carleson_sum(forest, whole_generation(forest, j), R) ==
          doctest::Approx(mass_R).epsilon(1e-12));

  // k generations stack to k times the root mass.
  CubeFamily all;
  for (int j = 1; j <= 3; ++j)
    for (const auto& q : forest.generation(j)) all.insert({j, q.ordinal});
  CHECK(carleson_sum(forest, all, R) == doctest::Approx(3.0 * mass_R).epsilon(1e-12));
  CHECK(carleson_sum(forest, CubeFamily{}, R) == 0.0);
}

TEST_CASE("carleson_check matches a brute-force double loop") {
  const auto mu = test_helpers::make_grid_plane(32, 1.0 / 32.0);
  const auto forest = build_cubes(mu, 0, 3);
  Rng rng(6, "carleson-family");
  CubeFamily fam;
  for (int j = 0; j <= 3; ++j)
    for (const auto& q : forest.generation(j))
      if (rng.unit() < 0.35) fam.insert({j, q.ordinal});

  double want = 0.0;
  for (int j = 0; j <= 3; ++j) {
    for (const auto& rq : forest.generation(j)) {
      const CubeId R{j, rq.ordinal};
      double sum = 0.0;
      for (CubeId q : fam.ids)
        if (contained_oracle(forest, q, R)) sum += forest.cube(q.j, q.ordinal).mass;
      want = std::max(want, sum / rq.mass);
    }
  }
  const auto rep = carleson_check(forest, fam, want + 0.01);
  CHECK(rep.max_ratio == doctest::Approx(want).epsilon(1e-12));
  CHECK(rep.pass);
  CHECK(!carleson_check(forest, fam, want - 0.01).pass);
  CHECK(rep.per_generation_max.size() == 4);
}

TEST_CASE("constant-density membership on a segment: lambda near one half") {
  const auto mu = test_helpers::make_line(2001, 1e-3);
  const auto m = wcd_membership(mu, Vec::Zero(2), 0.2, 0.1);
  CHECK(m.member);
  CHECK(m.lambda == doctest::Approx(0.5).epsilon(0.02));
  CHECK(m.deviation <= 0.02 * 0.2);
}

TEST_CASE("point mass sits at the epsilon = 1/2 membership boundary") {
  Eigen::MatrixXd pts(1, 2);
  pts << 0.0, 0.0;
  DiscreteMeasure mu(2, 1, pts, Eigen::VectorXd::Ones(1));
  const double r = 1.0;
  const auto lo = wcd_membership(mu, Vec::Zero(2), r, 0.45);
  const auto hi = wcd_membership(mu, Vec::Zero(2), r, 0.55);
  CHECK(!lo.member);
  CHECK(hi.member);
  CHECK(lo.deviation == doctest::Approx(0.5 * r).epsilon(0.02));
}

TEST_CASE("membership is invariant under weight rescaling") {
  const auto mu = test_helpers::make_line(801, 2e-3);
  DiscreteMeasure scaled(2, 1, mu.points(), mu.weights() * 7.25);
  const auto a = wcd_membership(mu, Vec::Zero(2), 0.3, 0.1);
  const auto b = wcd_membership(scaled, Vec::Zero(2), 0.3, 0.1);
  CHECK(a.member == b.member);
  CHECK(a.deviation == doctest::Approx(b.deviation).epsilon(1e-9));
  CHECK(b.lambda == doctest::Approx(a.lambda / 7.25).epsilon(1e-6));
}

TEST_CASE("membership guards scale and support") {
  const auto mu = test_helpers::make_line(101, 0.01);
  CHECK_THROWS_AS(wcd_membership(mu, Vec::Zero(2), 0.005, 0.1), ScaleError);
  Vec off(2);
  off << 9.0, 9.0;
  CHECK_THROWS_AS(wcd_membership(mu, off, 0.5, 0.1), EmptyIntersectionError);
}

TEST_CASE("wcd_scan on a flat segment: interior cubes are members") {
  const auto mu = test_helpers::make_line(2001, 1e-3);
  const auto forest = build_cubes(mu, 0, 4);
  const auto res = wcd_scan(mu, forest, 0.2, 4.0);
  // Cubes whose surrogate window stays inside the data (normalized support
  // spans about [-1/2, 1/2]) must be members; only boundary cubes may fail.
  int interior = 0;
  for (const auto& row : res.rows) {
    if (std::abs(row.x[0]) + 2.0 * row.r <= 0.5) {
      ++interior;
      CHECK(row.member);
    }
  }
  CHECK(interior > 0);
  CHECK(res.bounded);  // boundary losses stay within the packing budget
}

TEST_CASE("flags on a flat grid cover the interior fine cubes") {
  const auto mu = test_helpers::make_grid_plane(64, 1.0 / 64.0);
  const auto forest = build_cubes(mu, 0, 4);
  const auto flags = neps_flags(mu, forest, 0.2);
  CHECK(flags.size() > 0);
  // Coarse cubes cannot match any dictionary measure: B_Q reaches past the
  // data patch, where every candidate plane keeps mass but the data has none.
  for (CubeId id : flags.ids) CHECK(id.j >= 2);
  // Fine cubes whose analysis ball stays inside the patch must be flagged.
  const double half = 0.5 * 63.0 / 64.0 * forest.scale();  // patch half-side
  for (const auto& q : forest.generation(4)) {
    const double reach = 3.0 * q.side();
    if (std::abs(q.center[0]) + reach <= half && std::abs(q.center[1]) + reach <= half)
      CHECK(flags.contains({4, q.ordinal}));
  }
}

TEST_CASE("tree decomposition when every cube is flagged: a single tree") {
  const auto mu = test_helpers::make_grid_plane(32, 1.0 / 32.0);
  const auto forest = build_cubes(mu, 0, 3);
  CubeFamily flags;
  const CubeId R{0, 0};
  for (CubeId id : descendants(forest, R)) flags.insert(id);
  const auto trees = tree_decompose(forest, flags, R);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].root == R);
  CHECK(trees[0].members.size() == descendants(forest, R).size());
  // Stop set: exactly the bottom generation.
  for (CubeId s : trees[0].stop) CHECK(s.j == forest.j_max());
  CHECK(!trees[0].pb.has_value());  // the root is R itself
  CHECK(validate_trees(trees, forest, flags, R).all_ok());
}

TEST_CASE("no flags means no trees") {
  const auto mu = test_helpers::make_grid_plane(16, 1.0 / 16.0);
  const auto forest = build_cubes(mu, 0, 2);
  const auto trees = tree_decompose(forest, CubeFamily{}, CubeId{0, 0});
  CHECK(trees.empty());
}

TEST_CASE("an unflagged cube stops growth and yields pb witnesses") {
  const auto mu = test_helpers::make_grid_plane(32, 1.0 / 32.0);
  const auto forest = build_cubes(mu, 0, 3);
  const CubeId R{0, 0};
  // Pick a generation-2 cube with at least two siblings and unflag it.
  CubeId victim{-1, -1};
  for (const auto& q : forest.generation(2)) {
    const auto& parent = forest.cube(1, q.parent);
    if (parent.children.size() >= 2 && contained_oracle(forest, {1, q.parent}, R)) {
      victim = {2, q.ordinal};
      break;
    }
  }
  REQUIRE(victim.j == 2);
  CubeFamily flags;
  for (CubeId id : descendants(forest, R))
    if (id != victim) flags.insert(id);

  const auto trees = tree_decompose(forest, flags, R);
  const auto rep = validate_trees(trees, forest, flags, R);
  CHECK(rep.all_ok());

  // The victim's parent must be a Stop cube of the main tree, and the
  // victim's flagged siblings become roots with the victim as pb witness.
  const CubeId parent{1, forest.cube(victim.j, victim.ordinal).parent};
  bool parent_stopped = false;
  int sibling_roots = 0;
  for (const auto& t : trees) {
    if (t.members.count(parent)) parent_stopped = t.stop.count(parent) > 0;
    if (t.root.j == 2 && forest.cube(2, t.root.ordinal).parent == parent.ordinal &&
        t.root != victim) {
      ++sibling_roots;
      REQUIRE(t.pb.has_value());
      CHECK(*t.pb == victim);
    }
  }
  CHECK(parent_stopped);
  CHECK(sibling_roots ==
        static_cast<int>(forest.cube(parent.j, parent.ordinal).children.size()) - 1);
}

TEST_CASE("random flag sets always decompose cleanly and pack") {
  const auto mu = test_helpers::make_grid_plane(32, 1.0 / 32.0);
  const auto forest = build_cubes(mu, 0, 3);
  const CubeId R{0, 0};
  const auto under = descendants(forest, R);
  Rng rng(14, "tree-trials");
  for (int trial = 0; trial < 50; ++trial) {
    CubeFamily flags, complement;
    for (CubeId id : under) {
      if (rng.unit() < 0.7)
        flags.insert(id);
      else
        complement.insert(id);
    }
    const auto trees = tree_decompose(forest, flags, R);
    CHECK(validate_trees(trees, forest, flags, R).all_ok());
    const auto pack = tree_packing_check(trees, forest, R, complement);
    CHECK(pack.pass_packing);
    CHECK(pack.structure.all_ok());
  }
}

TEST_CASE("descendants are ordered and closed under parents") {
  const auto mu = test_helpers::make_grid_plane(16, 1.0 / 16.0);
  const auto forest = build_cubes(mu, 0, 2);
  const CubeId R{0, 0};
  const auto under = descendants(forest, R);
  CHECK(std::is_sorted(under.begin(), under.end()));
  CHECK(under.front() == R);
  for (CubeId id : under) {
    if (id == R) continue;
    const CubeId parent{id.j - 1, forest.cube(id.j, id.ordinal).parent};
    CHECK(std::binary_search(under.begin(), under.end(), parent));
  }
}
