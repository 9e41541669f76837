#include "urect/cubes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "urect/errors.hpp"

namespace urect {

namespace {

// Split one member set into cells whose bounding-box diagonal is at most
// 2 * rho: bisect the widest bounding-box axis at its midpoint until every
// cell fits. Splitting planes at a given scale refine the planes of every
// coarser scale, so cells nest, cover, and stay pairwise disjoint. On
// near-uniform lattices the midpoint planes fall between sample rows, which
// keeps each cell's center well clear of the neighboring cells. Returns
// (center point index, member list) pairs ordered by center index; the
// center is the member nearest its cell's bounding-box midpoint.
std::vector<std::pair<int, std::vector<int>>> split_cell(const Eigen::MatrixXd& pts,
                                                         const std::vector<int>& members,
                                                         double rho) {
  const double diag2_max = 4.0 * rho * rho;

  std::vector<std::vector<int>> done;
  std::vector<std::vector<int>> work{members};
  while (!work.empty()) {
    std::vector<int> cell = std::move(work.back());
    work.pop_back();
    Vec lo = pts.row(cell.front());
    Vec hi = lo;
    for (int i : cell) {
      lo = lo.cwiseMin(pts.row(i).transpose());
      hi = hi.cwiseMax(pts.row(i).transpose());
    }
    if (cell.size() == 1 || (hi - lo).squaredNorm() <= diag2_max) {
      done.push_back(std::move(cell));
      continue;
    }
    Eigen::Index axis = 0;
    (hi - lo).maxCoeff(&axis);
    const double mid = 0.5 * (lo[axis] + hi[axis]);
    std::vector<int> left, right;
    for (int i : cell) (pts(i, axis) < mid ? left : right).push_back(i);
    work.push_back(std::move(right));
    work.push_back(std::move(left));
  }

  std::vector<std::pair<int, std::vector<int>>> cells;
  cells.reserve(done.size());
  for (auto& cell : done) {
    std::sort(cell.begin(), cell.end());
    Vec lo = pts.row(cell.front());
    Vec hi = lo;
    for (int i : cell) {
      lo = lo.cwiseMin(pts.row(i).transpose());
      hi = hi.cwiseMax(pts.row(i).transpose());
    }
    const Vec middle = 0.5 * (lo + hi);
    int center = cell.front();
    double best = std::numeric_limits<double>::infinity();
    for (int i : cell) {
      const double d2 = (Vec(pts.row(i)) - middle).squaredNorm();
      if (d2 < best) {
        best = d2;
        center = i;
      }
    }
    cells.emplace_back(center, std::move(cell));
  }
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return cells;
}

}  // namespace

const std::vector<MuCube>& CubeForest::generation(int j) const {
  if (j < j_min_ || j > j_max_) throw ParameterError("generation outside the forest range");
  return gens_[static_cast<std::size_t>(j - j_min_)];
}

std::vector<MuCube>& CubeForest::generation(int j) {
  if (j < j_min_ || j > j_max_) throw ParameterError("generation outside the forest range");
  return gens_[static_cast<std::size_t>(j - j_min_)];
}

std::size_t CubeForest::cube_count() const {
  std::size_t n = 0;
  for (const auto& g : gens_) n += g.size();
  return n;
}

void CubeForest::check_measure(const DiscreteMeasure& mu) const {
  const double tol = 1e-9 * (1.0 + std::abs(measure_mass_));
  if (mu.size() != measure_size_ || std::abs(mu.total_mass() - measure_mass_) > tol)
    throw IdentityError("forest was built from a different measure");
}

DiscreteMeasure CubeForest::normalized_measure(const DiscreteMeasure& mu) const {
  check_measure(mu);
  return mu.blowdown(Vec::Zero(mu.dim()), 1.0 / scale_);
}

CubeForest build_cubes(const DiscreteMeasure& mu, int j_min, int j_max) {
  if (j_min > j_max) throw ParameterError("need j_min <= j_max");
  // Deflate by a relative 1e-12 so the normalized diameter stays strictly
  // below 2^{-j_min} despite rounding in the rescale.
  const double scale =
      mu.extent() > 0.0 ? (1.0 - 1e-12) * std::ldexp(1.0, -j_min) / mu.extent() : 1.0;
  if (std::ldexp(1.0, -j_max) < 4.0 * mu.resolution_floor() * scale)
    throw ScaleError("finest generation is below 4x the resolution floor");

  CubeForest forest;
  forest.j_min_ = j_min;
  forest.j_max_ = j_max;
  forest.scale_ = scale;
  forest.measure_size_ = mu.size();
  forest.measure_mass_ = mu.total_mass();

  const Eigen::MatrixXd pts = mu.points() * scale;

  std::vector<int> all(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) all[i] = static_cast<int>(i);

  forest.gens_.resize(static_cast<std::size_t>(j_max - j_min + 1));
  for (int j = j_min; j <= j_max; ++j) {
    const double rho = std::ldexp(1.0, -j - 1);
    auto& gen = forest.gens_[static_cast<std::size_t>(j - j_min)];
    const int parent_count =
        j == j_min ? 1 : static_cast<int>(forest.gens_[static_cast<std::size_t>(j - 1 - j_min)].size());
    for (int p = 0; p < parent_count; ++p) {
      const std::vector<int>* members = &all;
      MuCube* parent = nullptr;
      if (j > j_min) {
        parent = &forest.gens_[static_cast<std::size_t>(j - 1 - j_min)][static_cast<std::size_t>(p)];
        members = &parent->members;
      }
      for (auto& cell : split_cell(pts, *members, rho)) {
        MuCube q;
        q.j = j;
        q.ordinal = static_cast<int>(gen.size());
        q.center_index = cell.first;
        q.center = pts.row(cell.first);
        q.members = std::move(cell.second);
        q.parent = parent ? p : -1;
        q.mass = 0.0;
        for (int i : q.members) q.mass += mu.weight(static_cast<std::size_t>(i));
        if (parent) parent->children.push_back(q.ordinal);
        gen.push_back(std::move(q));
      }
    }
  }
  return forest;
}

Ball cube_ball(const MuCube& q) { return Ball(q.center, 3.0 * q.side()); }

AxiomReport verify_cube_axioms(const CubeForest& forest, const DiscreteMeasure& mu) {
  forest.check_measure(mu);
  const Eigen::MatrixXd pts = mu.points() * forest.scale();
  const KdTree tree(pts);
  const int n = mu.intrinsic_dim();

  AxiomReport rep;
  rep.partition_ok = true;
  rep.nesting_ok = true;
  rep.mass_min = std::numeric_limits<double>::infinity();
  rep.mass_max = 0.0;
  rep.sep_const = std::numeric_limits<double>::infinity();

  std::vector<int> prev_label;
  for (int j = forest.j_min(); j <= forest.j_max(); ++j) {
    const auto& gen = forest.generation(j);
    std::vector<int> label(mu.size(), -1);
    for (const auto& q : gen) {
      const double side = q.side();
      if (q.members.empty()) rep.partition_ok = false;
      // Certified diameter bound: the member bounding-box diagonal.
      Vec lo = pts.row(q.members.front());
      Vec hi = lo;
      for (int i : q.members) {
        if (label[static_cast<std::size_t>(i)] != -1) rep.partition_ok = false;
        label[static_cast<std::size_t>(i)] = q.ordinal;
        lo = lo.cwiseMin(pts.row(i).transpose());
        hi = hi.cwiseMax(pts.row(i).transpose());
      }
      rep.diam_const = std::max(rep.diam_const, (hi - lo).norm() / side);
      const double mass_ratio = q.mass / std::pow(side, n);
      rep.mass_min = std::min(rep.mass_min, mass_ratio);
      rep.mass_max = std::max(rep.mass_max, mass_ratio);

      // Separation: nearest support point outside Q (skip when Q is the
      // whole support at this generation).
      if (q.members.size() < mu.size()) {
        double best = std::numeric_limits<double>::infinity();
        for (double r = side; r <= 16.0 * std::ldexp(1.0, -forest.j_min()); r *= 2.0) {
          for (int i : tree.ball(q.center, r)) {
            if (label[static_cast<std::size_t>(i)] == q.ordinal) continue;
            best = std::min(best, (Vec(pts.row(i)) - q.center).norm());
          }
          if (best < std::numeric_limits<double>::infinity()) break;
        }
        if (best < std::numeric_limits<double>::infinity())
          rep.sep_const = std::min(rep.sep_const, best / side);
      }
    }
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (label[i] == -1) rep.partition_ok = false;
    if (j > forest.j_min()) {
      for (std::size_t i = 0; i < mu.size(); ++i) {
        const MuCube& q = forest.cube(j, label[i]);
        if (q.parent != prev_label[i]) rep.nesting_ok = false;
      }
      for (const auto& q : gen)
        if (q.parent < 0) rep.nesting_ok = false;
    }
    prev_label = std::move(label);
  }
  return rep;
}

nlohmann::json AxiomReport::to_json() const {
  return {{"partition_ok", partition_ok}, {"nesting_ok", nesting_ok},
          {"diam_const", diam_const},     {"mass_min", mass_min},
          {"mass_max", mass_max},         {"sep_const", sep_const}};
}

nlohmann::json CubeForest::to_json(bool with_members) const {
  nlohmann::json cubes = nlohmann::json::array();
  for (const auto& gen : gens_) {
    for (const auto& q : gen) {
      nlohmann::json center = nlohmann::json::array();
      for (Eigen::Index k = 0; k < q.center.size(); ++k) center.push_back(q.center[k] / scale_);
      nlohmann::json item = {{"generation", q.j},        {"id", q.ordinal},
                             {"center", center},         {"side", q.side() / scale_},
                             {"parent", q.parent},       {"mass", q.mass},
                             {"member_count", q.members.size()}};
      if (with_members) item["members"] = q.members;
      cubes.push_back(std::move(item));
    }
  }
  return {{"j_min", j_min_}, {"j_max", j_max_}, {"scale", scale_}, {"cubes", std::move(cubes)}};
}

}  // namespace urect
