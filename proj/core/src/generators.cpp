#include "urect/generators.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "urect/errors.hpp"
#include "urect/rng.hpp"

namespace urect {
namespace {

// Cell-centered grid coordinates over [-extent, extent].
std::vector<double> grid_axis(double extent, int m) {
  std::vector<double> xs(m);
  const double h = 2.0 * extent / m;
  for (int i = 0; i < m; ++i) xs[i] = -extent + (i + 0.5) * h;
  return xs;
}

DiscreteMeasure make(const GeneratorSpec& spec, std::vector<Eigen::VectorXd> pts,
                     std::vector<double> ws) {
  Eigen::MatrixXd P(static_cast<Eigen::Index>(pts.size()), spec.d);
  Eigen::VectorXd W(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    P.row(static_cast<Eigen::Index>(i)) = pts[i].transpose();
    W[static_cast<Eigen::Index>(i)] = ws[i];
  }
  return DiscreteMeasure(spec.d, spec.n, std::move(P), std::move(W), spec.to_kv());
}

DiscreteMeasure generate_flat_plane(const GeneratorSpec& spec) {
  // Cell-centered lattice on the axis-aligned n-plane; weights sum to the
  // Hausdorff measure (2*extent)^n of the sampled patch.
  const int m = std::max<int>(1, static_cast<int>(std::llround(
                                     std::pow(static_cast<double>(spec.count), 1.0 / spec.n))));
  const auto axis = grid_axis(spec.extent, m);
  std::size_t total = 1;
  for (int k = 0; k < spec.n; ++k) total *= static_cast<std::size_t>(m);
  const double w = std::pow(2.0 * spec.extent, spec.n) / static_cast<double>(total);

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> ws;
  pts.reserve(total);
  ws.reserve(total);
  std::vector<int> idx(spec.n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(spec.d);
    std::size_t rem = flat;
    for (int k = 0; k < spec.n; ++k) {
      p[k] = axis[rem % m];
      rem /= m;
    }
    pts.push_back(std::move(p));
    ws.push_back(w);
  }
  return make(spec, std::move(pts), std::move(ws));
}

// Light cone sheets x4 = +-|v|, v in R^3, area element sqrt(2) dv; the
// product kind appends a lattice over an (n-3)-dimensional subspace.
DiscreteMeasure generate_cone(const GeneratorSpec& spec) {
  const int prod_dims = spec.n - 3;
  // Split the budget: two sheets, ball-of-R^3 cells (volume fraction pi/6 of
  // the cube), and m_u lattice sites per product dimension.
  double per_sheet = static_cast<double>(spec.count) / 2.0;
  int mu = 1;
  if (prod_dims > 0) {
    // Balance linear densities between v-space and u-space.
    const double target = std::pow(per_sheet / (M_PI / 6.0), 1.0 / (3.0 + prod_dims));
    mu = std::max(1, static_cast<int>(std::llround(target)));
    per_sheet /= std::pow(static_cast<double>(mu), prod_dims);
  }
  const int mv = std::max<int>(2, static_cast<int>(std::llround(
                                      std::pow(per_sheet / (M_PI / 6.0), 1.0 / 3.0))));
  const auto vaxis = grid_axis(spec.extent, mv);
  const double hv = 2.0 * spec.extent / mv;
  const double hu = 2.0 * spec.extent / mu;
  const double w_cone = std::sqrt(2.0) * hv * hv * hv;

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> ws;
  std::vector<Eigen::VectorXd> ucoords;
  if (prod_dims > 0) {
    const auto uaxis = grid_axis(spec.extent, mu);
    std::size_t utotal = 1;
    for (int k = 0; k < prod_dims; ++k) utotal *= static_cast<std::size_t>(mu);
    for (std::size_t flat = 0; flat < utotal; ++flat) {
      Eigen::VectorXd u(prod_dims);
      std::size_t rem = flat;
      for (int k = 0; k < prod_dims; ++k) {
        u[k] = uaxis[rem % mu];
        rem /= mu;
      }
      ucoords.push_back(std::move(u));
    }
  } else {
    ucoords.emplace_back(0);
  }
  const double w = w_cone * std::pow(hu, std::max(0, prod_dims));

  for (int i = 0; i < mv; ++i)
    for (int j = 0; j < mv; ++j)
      for (int k = 0; k < mv; ++k) {
        const double v1 = vaxis[i], v2 = vaxis[j], v3 = vaxis[k];
        const double norm = std::sqrt(v1 * v1 + v2 * v2 + v3 * v3);
        if (norm >= spec.extent) continue;
        for (const auto& u : ucoords)
          for (int sheet = 0; sheet < 2; ++sheet) {
            Eigen::VectorXd p = Eigen::VectorXd::Zero(spec.d);
            p[0] = v1;
            p[1] = v2;
            p[2] = v3;
            p[3] = sheet == 0 ? norm : -norm;
            for (int q = 0; q < prod_dims; ++q) p[4 + q] = u[q];
            pts.push_back(std::move(p));
            ws.push_back(w);
            if (norm == 0.0) break;  // apex appears once
          }
      }
  return make(spec, std::move(pts), std::move(ws));
}

DiscreteMeasure generate_graph(const GeneratorSpec& spec) {
  const GraphFunction g = graph_function(spec);
  const int m = std::max<int>(1, static_cast<int>(std::llround(
                                     std::pow(static_cast<double>(spec.count), 1.0 / spec.n))));
  const auto axis = grid_axis(spec.extent, m);
  const double h = 2.0 * spec.extent / m;
  std::size_t total = 1;
  for (int k = 0; k < spec.n; ++k) total *= static_cast<std::size_t>(m);

  std::vector<Eigen::VectorXd> pts;
  std::vector<double> ws;
  pts.reserve(total);
  ws.reserve(total);
  const double cell = std::pow(h, spec.n);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Eigen::VectorXd u(spec.n);
    std::size_t rem = flat;
    for (int k = 0; k < spec.n; ++k) {
      u[k] = axis[rem % m];
      rem /= m;
    }
    const Eigen::VectorXd v = g.value(u);
    const Eigen::MatrixXd J = g.jacobian(u);
    // Graph area element sqrt(det(I + J^T J)).
    const Eigen::MatrixXd G =
        Eigen::MatrixXd::Identity(spec.n, spec.n) + J.transpose() * J;
    const double area = std::sqrt(G.determinant());
    Eigen::VectorXd p = Eigen::VectorXd::Zero(spec.d);
    p.head(spec.n) = u;
    p.segment(spec.n, g.codim) = v;
    pts.push_back(std::move(p));
    ws.push_back(area * cell);
  }
  return make(spec, std::move(pts), std::move(ws));
}

DiscreteMeasure generate_cantor(const GeneratorSpec& spec) {
  int level = 0;
  std::size_t cells = 1;
  while (cells < spec.count) {
    cells *= 4;
    ++level;
  }
  const double side = spec.extent;
  std::vector<Eigen::VectorXd> pts;
  std::vector<double> ws;
  pts.reserve(cells);
  const double w = side / static_cast<double>(cells);

  // Corner offsets of the four sub-squares, as fractions of the parent side.
  const double ox[4] = {0.0, 0.75, 0.0, 0.75};
  const double oy[4] = {0.0, 0.0, 0.75, 0.75};
  for (std::size_t code = 0; code < cells; ++code) {
    double x = 0.0, y = 0.0, s = side;
    std::size_t rem = code;
    for (int l = 0; l < level; ++l) {
      const std::size_t q = rem % 4;
      rem /= 4;
      x += ox[q] * s;
      y += oy[q] * s;
      s *= 0.25;
    }
    Eigen::VectorXd p(2);
    p << x + 0.5 * s, y + 0.5 * s;  // cell center
    pts.push_back(std::move(p));
    ws.push_back(w);
  }
  return make(spec, std::move(pts), std::move(ws));
}

}  // namespace

void GeneratorSpec::validate() const {
  if (count == 0) throw SpecError("empty measure requested (count = 0)");
  if (extent <= 0.0) throw SpecError("extent must be positive");
  if (n <= 0 || d <= 0 || n > d) throw SpecError("need 0 < n <= d");
  switch (kind) {
    case Kind::FlatPlane:
      break;
    case Kind::LightCone:
      if (d != 4 || n != 3) throw SpecError("light-cone requires d = 4, n = 3");
      break;
    case Kind::ConeProduct:
      if (n < 3 || d < n + 1) throw SpecError("cone-product requires n >= 3, d >= n + 1");
      break;
    case Kind::LipschitzGraph:
      if (n >= d) throw SpecError("lipschitz-graph requires n < d");
      if (slope <= 0.0) throw SpecError("lipschitz-graph requires positive slope");
      break;
    case Kind::FourCornerCantor:
      if (n != 1 || d != 2) throw SpecError("four-corner-cantor requires n = 1, d = 2");
      break;
  }
}

GraphFunction graph_function(const GeneratorSpec& spec) {
  spec.validate();
  if (spec.kind != GeneratorSpec::Kind::LipschitzGraph)
    throw SpecError("graph_function needs a lipschitz-graph spec");
  const int codim = spec.d - spec.n;
  const int terms = 6;
  GraphFunction g;
  g.n = spec.n;
  g.codim = codim;
  g.amplitude.resize(codim, terms);
  g.frequencies.resize(terms, spec.n);
  g.phases.resize(terms);
  Rng rng(spec.seed, "lipschitz-graph");
  // Octave-spaced frequencies with 1/|w| amplitudes give roughness across
  // scales; everything is rescaled afterwards to hit the slope exactly.
  for (int t = 0; t < terms; ++t) {
    Eigen::VectorXd dir(spec.n);
    double norm = 0.0;
    do {
      for (int k = 0; k < spec.n; ++k) dir[k] = rng.normal();
      norm = dir.norm();
    } while (norm < 1e-12);
    const double freq = (0.5 / spec.extent) * std::pow(2.0, t);
    g.frequencies.row(t) = (freq / norm) * dir.transpose();
    g.phases[t] = rng.uniform(0.0, 2.0 * M_PI);
    for (int c = 0; c < codim; ++c) g.amplitude(c, t) = rng.uniform(0.5, 1.0) / freq;
  }
  // Lipschitz norm bound: sqrt(sum_c (sum_t |a_ct| |w_t|)^2).
  double bound2 = 0.0;
  for (int c = 0; c < codim; ++c) {
    double lc = 0.0;
    for (int t = 0; t < terms; ++t)
      lc += std::abs(g.amplitude(c, t)) * g.frequencies.row(t).norm();
    bound2 += lc * lc;
  }
  g.amplitude *= spec.slope / std::sqrt(bound2);
  return g;
}

Eigen::VectorXd GraphFunction::value(const Eigen::VectorXd& u) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(codim);
  for (int t = 0; t < frequencies.rows(); ++t) {
    const double s = std::sin(frequencies.row(t).dot(u) + phases[t]);
    for (int c = 0; c < codim; ++c) v[c] += amplitude(c, t) * s;
  }
  return v;
}

Eigen::MatrixXd GraphFunction::jacobian(const Eigen::VectorXd& u) const {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(codim, n);
  for (int t = 0; t < frequencies.rows(); ++t) {
    const double c0 = std::cos(frequencies.row(t).dot(u) + phases[t]);
    for (int c = 0; c < codim; ++c) J.row(c) += amplitude(c, t) * c0 * frequencies.row(t);
  }
  return J;
}

DiscreteMeasure generate(const GeneratorSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case GeneratorSpec::Kind::FlatPlane:
      return generate_flat_plane(spec);
    case GeneratorSpec::Kind::LightCone:
    case GeneratorSpec::Kind::ConeProduct:
      return generate_cone(spec);
    case GeneratorSpec::Kind::LipschitzGraph:
      return generate_graph(spec);
    case GeneratorSpec::Kind::FourCornerCantor:
      return generate_cantor(spec);
  }
  throw SpecError("unknown generator kind");
}

std::string GeneratorSpec::kind_name(Kind k) {
  switch (k) {
    case Kind::FlatPlane: return "flat-plane";
    case Kind::LightCone: return "light-cone";
    case Kind::ConeProduct: return "cone-product";
    case Kind::LipschitzGraph: return "lipschitz-graph";
    case Kind::FourCornerCantor: return "four-corner-cantor";
  }
  return "?";
}

GeneratorSpec::Kind GeneratorSpec::kind_from_name(const std::string& name) {
  if (name == "flat-plane") return Kind::FlatPlane;
  if (name == "light-cone") return Kind::LightCone;
  if (name == "cone-product") return Kind::ConeProduct;
  if (name == "lipschitz-graph") return Kind::LipschitzGraph;
  if (name == "four-corner-cantor") return Kind::FourCornerCantor;
  throw SpecError("unknown generator kind: " + name);
}

std::string GeneratorSpec::to_kv() const {
  std::ostringstream out;
  out << "kind=" << kind_name(kind) << "\n";
  out << "d=" << d << "\n";
  out << "n=" << n << "\n";
  out << "extent=" << extent << "\n";
  out << "count=" << count << "\n";
  if (kind == Kind::LipschitzGraph) out << "slope=" << slope << "\n";
  out << "seed=" << seed << "\n";
  return out.str();
}

GeneratorSpec GeneratorSpec::from_kv(std::istream& in) {
  GeneratorSpec spec;
  std::string line;
  std::map<std::string, std::string> kv;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got: " + line);
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  try {
    if (kv.count("kind")) spec.kind = kind_from_name(kv.at("kind"));
    if (kv.count("d")) spec.d = std::stoi(kv.at("d"));
    if (kv.count("n")) spec.n = std::stoi(kv.at("n"));
    if (kv.count("extent")) spec.extent = std::stod(kv.at("extent"));
    if (kv.count("count")) spec.count = std::stoull(kv.at("count"));
    if (kv.count("slope")) spec.slope = std::stod(kv.at("slope"));
    if (kv.count("seed")) spec.seed = std::stoull(kv.at("seed"));
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad generator config value: ") + e.what());
  }
  spec.validate();
  return spec;
}

}  // namespace urect
