#include "urect/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "urect/errors.hpp"
#include "urect/flatness.hpp"

namespace urect {

namespace {

const MuCube& get_cube(const CubeForest& forest, CubeId id) {
  const auto& gen = forest.generation(id.j);
  if (id.ordinal < 0 || static_cast<std::size_t>(id.ordinal) >= gen.size())
    throw ParameterError("cube id outside the forest");
  return gen[static_cast<std::size_t>(id.ordinal)];
}

bool contained_in(const CubeForest& forest, CubeId q, CubeId r) {
  if (q.j < r.j) return false;
  while (q.j > r.j) {
    const int p = get_cube(forest, q).parent;
    if (p < 0) return false;
    q = {q.j - 1, p};
  }
  return q.ordinal == r.ordinal;
}

// mass accumulated at every ancestor (inclusive) for a set of source cubes.
std::map<CubeId, double> ancestor_sums(const CubeForest& forest, const std::set<CubeId>& sources) {
  std::map<CubeId, double> sums;
  for (CubeId q : sources) {
    const double mass = get_cube(forest, q).mass;
    CubeId cur = q;
    while (true) {
      sums[cur] += mass;
      const int p = get_cube(forest, cur).parent;
      if (p < 0) break;
      cur = {cur.j - 1, p};
    }
  }
  return sums;
}

}  // namespace

std::vector<CubeId> descendants(const CubeForest& forest, CubeId R) {
  get_cube(forest, R);
  std::vector<CubeId> out;
  std::deque<CubeId> queue = {R};
  while (!queue.empty()) {
    const CubeId id = queue.front();
    queue.pop_front();
    out.push_back(id);
    if (id.j < forest.j_max())
      for (int c : get_cube(forest, id).children) queue.push_back({id.j + 1, c});
  }
  std::sort(out.begin(), out.end());
  return out;
}

double carleson_sum(const CubeForest& forest, const CubeFamily& family, CubeId R) {
  get_cube(forest, R);
  double sum = 0.0;
  for (CubeId q : family.ids)
    if (contained_in(forest, q, R)) sum += get_cube(forest, q).mass;
  return sum;
}

CarlesonReport carleson_check(const CubeForest& forest, const CubeFamily& family, double c) {
  CarlesonReport rep;
  rep.target_c = c;
  const auto sums = ancestor_sums(forest, family.ids);
  for (int j = forest.j_min(); j <= forest.j_max(); ++j) {
    double gen_max = 0.0;
    for (const auto& q : forest.generation(j)) {
      const CubeId id{j, q.ordinal};
      const auto it = sums.find(id);
      const double ratio = it == sums.end() ? 0.0 : it->second / q.mass;
      gen_max = std::max(gen_max, ratio);
      if (ratio > rep.max_ratio) {
        rep.max_ratio = ratio;
        rep.offender = id;
      }
    }
    rep.per_generation_max.emplace_back(j, gen_max);
  }
  rep.pass = rep.max_ratio <= c;
  return rep;
}

WCDMembership wcd_membership(const DiscreteMeasure& mu, const Vec& x, double r, double eps) {
  if (r <= mu.resolution_floor())
    throw ScaleError("WCD scale is at or below the resolution floor");
  const auto inside = mu.support_in(Ball(x, r));
  if (inside.empty()) throw EmptyIntersectionError("WCD ball misses the support");

  // Deterministic (y, t) grid: strided centers, geometric radii down to r/256.
  std::vector<int> ys;
  const std::size_t cap = 24;
  const std::size_t stride = (inside.size() + cap - 1) / cap;
  for (std::size_t i = 0; i < inside.size(); i += stride) ys.push_back(inside[i]);

  const int n = mu.intrinsic_dim();
  std::vector<double> a, b;
  for (int yi : ys) {
    const Vec y = mu.point(static_cast<std::size_t>(yi));
    for (int k = 0; k <= 24; ++k) {
      const double t = r * std::pow(2.0, -k / 3.0);
      a.push_back(mu.ball_mass(Ball(y, t)));
      b.push_back(std::pow(t, n));
    }
  }

  // f(lambda) = max_i |lambda a_i - b_i| is convex piecewise linear.
  auto f = [&](double lam) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(lam * a[i] - b[i]));
    return m;
  };
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) hi = std::max(hi, b[i] / a[i]);
  for (int it = 0; it < 200; ++it) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2))
      hi = m2;
    else
      lo = m1;
  }
  WCDMembership res;
  res.lambda = std::max(0.5 * (lo + hi), std::numeric_limits<double>::min());
  res.deviation = f(res.lambda);
  res.member = res.deviation <= eps * std::pow(r, n);
  return res;
}

WCDResult wcd_scan(const DiscreteMeasure& mu, const CubeForest& forest, double eps, double c1p) {
  const DiscreteMeasure mun = forest.normalized_measure(mu);
  WCDResult res;
  res.eps = eps;
  res.c1p = c1p;

  std::set<CubeId> complement;
  for (int j = forest.j_min(); j <= forest.j_max(); ++j) {
    for (const auto& q : forest.generation(j)) {
      const CubeId id{j, q.ordinal};
      WCDResult::Row row;
      row.id = id;
      row.x = q.center;
      row.r = q.side();
      const auto m = wcd_membership(mun, q.center, q.side(), eps);
      row.deviation = m.deviation;
      row.lambda = m.lambda;
      row.member = m.member;
      if (!m.member) complement.insert(id);
      res.rows.push_back(std::move(row));
    }
  }

  const auto sums = ancestor_sums(forest, complement);
  const double log2 = std::log(2.0);
  for (int j = forest.j_min(); j <= forest.j_max(); ++j) {
    double gen_max = 0.0;
    for (const auto& q : forest.generation(j)) {
      const CubeId id{j, q.ordinal};
      const auto it = sums.find(id);
      const double s = it == sums.end() ? 0.0 : it->second * log2 / q.mass;
      res.root_sums.emplace_back(id, s);
      gen_max = std::max(gen_max, s);
      res.max_root_sum = std::max(res.max_root_sum, s);
    }
    res.per_generation_max.emplace_back(j, gen_max);
  }
  res.bounded = res.max_root_sum <= c1p;
  return res;
}

namespace {

// Dense flat sample of the candidate plane inside (slightly beyond) the ball.
DiscreteMeasure plane_candidate(const Plane& L, const Ball& b, double spacing, int n) {
  const Vec u0 = L.coords(b.center);
  const int m = L.m();
  const int half = static_cast<int>(std::ceil(b.radius / spacing)) + 1;
  std::vector<Vec> pts;
  std::vector<int> iv(static_cast<std::size_t>(m), -half);
  Vec u(m);
  while (true) {
    for (int k = 0; k < m; ++k) u[k] = u0[k] + spacing * iv[static_cast<std::size_t>(k)];
    const Vec y = L.lift(u);
    if ((y - b.center).norm() < b.radius + spacing) pts.push_back(y);
    int k = 0;
    for (; k < m; ++k) {
      if (++iv[static_cast<std::size_t>(k)] <= half) break;
      iv[static_cast<std::size_t>(k)] = -half;
    }
    if (k == m) break;
  }
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(pts.size()), L.ambient());
  for (std::size_t i = 0; i < pts.size(); ++i) mat.row(static_cast<Eigen::Index>(i)) = pts[i];
  return DiscreteMeasure(L.ambient(), n, std::move(mat),
                         Eigen::VectorXd::Ones(static_cast<Eigen::Index>(pts.size())),
                         "neps-plane-candidate");
}

// Posed light-cone sample: apex + rotation taking e4 to `axis`, graph points
// (v, +-|v|)/~ sampled on a v-lattice fine enough for the target resolution.
DiscreteMeasure cone_candidate(const Vec& apex, const Vec& axis, const Ball& b, double spacing) {
  Eigen::MatrixXd frame(4, 4);
  frame.col(3) = axis.normalized();
  // Complete to an orthonormal frame.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(frame.col(3));
  const Eigen::MatrixXd q = qr.householderQ();
  frame.col(0) = q.col(1);
  frame.col(1) = q.col(2);
  frame.col(2) = q.col(3);

  const double vstep = spacing / std::sqrt(2.0);
  const double reach = (apex - b.center).norm() + b.radius;
  const int half = static_cast<int>(std::ceil(reach / vstep)) + 1;
  std::vector<Vec> pts;
  Vec v(3), x(4);
  for (int i = -half; i <= half; ++i) {
    for (int jj = -half; jj <= half; ++jj) {
      for (int k = -half; k <= half; ++k) {
        v << i * vstep, jj * vstep, k * vstep;
        const double nv = v.norm();
        if (nv > reach) continue;
        for (const double sgn : {1.0, -1.0}) {
          x = apex + frame.col(0) * v[0] + frame.col(1) * v[1] + frame.col(2) * v[2] +
              frame.col(3) * (sgn * nv);
          if ((x - b.center).norm() < b.radius + spacing) pts.push_back(x);
          if (nv == 0.0) break;  // apex once
        }
      }
    }
  }
  if (pts.empty()) pts.push_back(apex);
  Eigen::MatrixXd mat(static_cast<Eigen::Index>(pts.size()), 4);
  for (std::size_t i = 0; i < pts.size(); ++i) mat.row(static_cast<Eigen::Index>(i)) = pts[i];
  return DiscreteMeasure(4, 3, std::move(mat),
                         Eigen::VectorXd::Ones(static_cast<Eigen::Index>(pts.size())),
                         "neps-cone-candidate");
}

}  // namespace

CubeFamily neps_flags(const DiscreteMeasure& mu, const CubeForest& forest, double eps) {
  const DiscreteMeasure mun = forest.normalized_measure(mu);
  const int n = mun.intrinsic_dim();
  CubeFamily flags;
  FitOptions fit;
  fit.budget = 40;

  for (int j = forest.j_min(); j <= forest.j_max(); ++j) {
    for (const auto& q : forest.generation(j)) {
      const Ball b = cube_ball(q);
      const double tol = eps * b.radius;
      const double spacing = tol / 4.0;

      const auto inside = mun.support_in(b);
      if (inside.empty()) continue;
      std::vector<Vec> pts;
      pts.reserve(inside.size());
      for (int i : inside) pts.push_back(mun.point(static_cast<std::size_t>(i)));

      bool flagged = false;
      if (n < mun.dim()) {
        const Plane L = minimax_fit(pts, n, fit);
        const auto sigma = plane_candidate(L, b, spacing, n);
        flagged = support_distance(mun, sigma, b) <= tol;
      }
      if (!flagged && mun.dim() == 4 && n == 3) {
        // Pose guess: apex near the ball's support centroid, axis = the
        // covariance direction most unlike the others.
        Vec mean = Vec::Zero(4);
        for (const auto& p : pts) mean += p;
        mean /= static_cast<double>(pts.size());
        int apex_i = inside[0];
        double best_d = std::numeric_limits<double>::infinity();
        for (int i : inside) {
          const double d = (mun.point(static_cast<std::size_t>(i)) - mean).squaredNorm();
          if (d < best_d) {
            best_d = d;
            apex_i = i;
          }
        }
        Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
        for (const auto& p : pts) cov += (p - mean) * (p - mean).transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        Vec evals = eig.eigenvalues();
        int axis_k = 0;
        double axis_score = -1.0;
        for (int k = 0; k < 4; ++k) {
          double others = 0.0;
          for (int l = 0; l < 4; ++l)
            if (l != k) others += evals[l];
          const double score = std::abs(evals[k] - others / 3.0);
          if (score > axis_score) {
            axis_score = score;
            axis_k = k;
          }
        }
        const Vec axis = eig.eigenvectors().col(axis_k);
        for (const Vec& apex :
             {Vec(mun.point(static_cast<std::size_t>(apex_i))), Vec(q.center)}) {
          const auto sigma = cone_candidate(apex, axis, b, spacing);
          if (support_distance(mun, sigma, b) <= tol) {
            flagged = true;
            break;
          }
        }
      }
      if (flagged) flags.insert({j, q.ordinal});
    }
  }
  return flags;
}

std::vector<Tree> tree_decompose(const CubeForest& forest, const CubeFamily& flags, CubeId R) {
  std::set<CubeId> pool;
  for (CubeId id : descendants(forest, R))
    if (flags.contains(id)) pool.insert(id);

  std::vector<Tree> trees;
  while (!pool.empty()) {
    // Maximal side length first; set order is (j, ordinal), so begin() is it.
    const CubeId root = *pool.begin();
    Tree t;
    t.root = root;
    t.members.insert(root);
    pool.erase(root);
    std::deque<CubeId> queue = {root};
    while (!queue.empty()) {
      const CubeId p = queue.front();
      queue.pop_front();
      if (p.j >= forest.j_max()) continue;
      const auto& kids = get_cube(forest, p).children;
      bool all_flagged = !kids.empty();
      for (int c : kids)
        if (!flags.contains({p.j + 1, c})) all_flagged = false;
      if (!all_flagged) continue;
      bool all_available = true;
      for (int c : kids)
        if (!pool.count({p.j + 1, c})) all_available = false;
      if (!all_available) continue;
      for (int c : kids) {
        const CubeId id{p.j + 1, c};
        t.members.insert(id);
        pool.erase(id);
        queue.push_back(id);
      }
    }
    // Stop(T): members whose sons do not all belong (bottom cubes included).
    for (CubeId m : t.members) {
      bool sons_in = m.j < forest.j_max();
      if (sons_in)
        for (int c : get_cube(forest, m).children)
          if (!t.members.count({m.j + 1, c})) sons_in = false;
      if (!sons_in) t.stop.insert(m);
    }
    // pb witness: an unflagged parent or brother of the root.
    if (root != R) {
      const CubeId parent{root.j - 1, get_cube(forest, root).parent};
      if (!flags.contains(parent)) {
        t.pb = parent;
      } else {
        for (int c : get_cube(forest, parent).children) {
          const CubeId sib{root.j, c};
          if (!flags.contains(sib)) {
            t.pb = sib;
            break;
          }
        }
      }
    }
    trees.push_back(std::move(t));
  }
  return trees;
}

TreeStructureReport validate_trees(const std::vector<Tree>& trees, const CubeForest& forest,
                                   const CubeFamily& flags, CubeId R) {
  TreeStructureReport rep;
  rep.disjoint = true;
  rep.coherent = true;
  rep.sibling_ok = true;
  rep.stop_ok = true;

  std::set<CubeId> seen;
  for (const auto& t : trees) {
    for (CubeId m : t.members) {
      if (!seen.insert(m).second) rep.disjoint = false;
      // Coherence: the parent chain up to the root stays inside the tree.
      if (m != t.root) {
        const CubeId parent{m.j - 1, get_cube(forest, m).parent};
        if (!t.members.count(parent)) rep.coherent = false;
      }
      if (!contained_in(forest, m, t.root)) rep.coherent = false;
    }
    for (CubeId m : t.members) {
      if (m.j >= forest.j_max()) continue;
      const auto& kids = get_cube(forest, m).children;
      int in = 0;
      for (int c : kids) in += t.members.count({m.j + 1, c}) ? 1 : 0;
      if (in != 0 && in != static_cast<int>(kids.size())) rep.sibling_ok = false;
    }
    for (CubeId m : t.members) {
      bool sons_in = m.j < forest.j_max();
      if (sons_in)
        for (int c : get_cube(forest, m).children)
          if (!t.members.count({m.j + 1, c})) sons_in = false;
      if (sons_in == (t.stop.count(m) > 0)) rep.stop_ok = false;
    }
    for (CubeId m : t.stop)
      if (!t.members.count(m)) rep.stop_ok = false;
  }

  std::set<CubeId> expected;
  for (CubeId id : descendants(forest, R))
    if (flags.contains(id)) expected.insert(id);
  rep.coverage = seen == expected;
  return rep;
}

TreePackingReport tree_packing_check(const std::vector<Tree>& trees, const CubeForest& forest,
                                     CubeId R, const CubeFamily& complement) {
  TreePackingReport rep;
  rep.mass_R = get_cube(forest, R).mass;
  for (const auto& t : trees) rep.root_mass_sum += get_cube(forest, t.root).mass;
  rep.ratio = rep.root_mass_sum / rep.mass_R;

  const auto under = descendants(forest, R);
  const std::set<CubeId> under_set(under.begin(), under.end());
  std::set<CubeId> comp_under;
  for (CubeId id : complement.ids)
    if (under_set.count(id)) comp_under.insert(id);

  // Complement-Carleson constant measured through the witness family: a tree
  // root other than the first either has an unavailable parent (parent in the
  // complement) or an unavailable sibling (parent has a complement child).
  // Either way the root children of such a parent pack into the parent's
  // mass, so Sum mu(roots) <= mu(R) + Sum over witness parents of mu(parent).
  std::set<CubeId> witnesses;
  for (CubeId id : comp_under) {
    witnesses.insert(id);
    const int p = get_cube(forest, id).parent;
    if (id.j > forest.j_min() && p >= 0) {
      const CubeId parent{id.j - 1, p};
      if (under_set.count(parent)) witnesses.insert(parent);
    }
  }
  double witness_mass = 0.0;
  for (CubeId id : witnesses) witness_mass += get_cube(forest, id).mass;
  rep.complement_constant = witness_mass / rep.mass_R;
  rep.bound = 1.0 + rep.complement_constant;
  rep.pass_packing = rep.ratio <= rep.bound + 1e-12;

  CubeFamily flags;
  for (CubeId id : under)
    if (!comp_under.count(id)) flags.insert(id);
  rep.structure = validate_trees(trees, forest, flags, R);
  return rep;
}

nlohmann::json CarlesonReport::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& [j, v] : per_generation_max) gens.push_back({{"generation", j}, {"max", v}});
  return {{"max_ratio", max_ratio},
          {"offender", {{"generation", offender.j}, {"id", offender.ordinal}}},
          {"target_c", target_c},
          {"pass", pass},
          {"per_generation_max", gens}};
}

nlohmann::json WCDResult::to_json() const {
  nlohmann::json gens = nlohmann::json::array();
  for (const auto& [j, v] : per_generation_max) gens.push_back({{"generation", j}, {"max", v}});
  return {{"surrogate", "constant-density"},
          {"eps", eps},
          {"c1p", c1p},
          {"max_root_sum", max_root_sum},
          {"bounded", bounded},
          {"per_generation_max", gens},
          {"cube_count", rows.size()}};
}

nlohmann::json TreePackingReport::to_json() const {
  return {{"root_mass_sum", root_mass_sum},
          {"mass_R", mass_R},
          {"ratio", ratio},
          {"complement_constant", complement_constant},
          {"bound", bound},
          {"pass_packing", pass_packing},
          {"structure",
           {{"disjoint", structure.disjoint},
            {"coverage", structure.coverage},
            {"coherent", structure.coherent},
            {"sibling_ok", structure.sibling_ok},
            {"stop_ok", structure.stop_ok}}}};
}

}  // namespace urect
