#include "urect/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "urect/errors.hpp"

namespace urect {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_double(const std::string& s, int line_no) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing junk");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": cannot parse number '" + s + "'");
  }
}

// Uniform weight normalizing the ball density to ~1 at scale extent/8.
Eigen::VectorXd density_normalized_weights(const Eigen::MatrixXd& pts, int n) {
  const Eigen::Index count = pts.rows();
  DiscreteMeasure unit(static_cast<int>(pts.cols()), n, pts, Eigen::VectorXd::Ones(count),
                       "ingest-probe");
  const double ref = unit.extent() / 8.0;
  double mean = 0.0;
  int used = 0;
  const std::size_t stride = std::max<std::size_t>(1, unit.size() / 16);
  for (std::size_t i = 0; i < unit.size(); i += stride) {
    mean += unit.ball_mass(Ball(unit.point(i), ref)) / std::pow(ref, n);
    ++used;
  }
  mean /= std::max(1, used);
  const double w = mean > 0.0 ? 1.0 / mean : 1.0;
  return Eigen::VectorXd::Constant(count, w);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  // Prefer the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof probe, "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

DiscreteMeasure read_csv(const std::string& path, int intrinsic_dim) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file");
  const auto header = split_csv(line);
  const bool weighted = !header.empty() && header.back() == "weight";
  const int d = static_cast<int>(header.size()) - (weighted ? 1 : 0);
  if (d < 1) throw ParseError(path + ": header must list coordinate columns x0,...");

  std::vector<double> coords, weights;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    if (static_cast<int>(fields.size()) != d + (weighted ? 1 : 0))
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(d + (weighted ? 1 : 0)) + " fields, got " +
                       std::to_string(fields.size()));
    for (int k = 0; k < d; ++k)
      coords.push_back(parse_double(fields[static_cast<std::size_t>(k)], line_no));
    if (weighted) weights.push_back(parse_double(fields.back(), line_no));
  }
  const Eigen::Index count = static_cast<Eigen::Index>(coords.size()) / d;
  Eigen::MatrixXd pts(count, d);
  for (Eigen::Index i = 0; i < count; ++i)
    for (int k = 0; k < d; ++k) pts(i, k) = coords[static_cast<std::size_t>(i * d + k)];

  Eigen::VectorXd w;
  if (weighted) {
    w = Eigen::Map<Eigen::VectorXd>(weights.data(), count);
  } else {
    w = density_normalized_weights(pts, intrinsic_dim);
  }
  return DiscreteMeasure(d, intrinsic_dim, std::move(pts), std::move(w), "csv:" + path);
}

void write_csv(const std::string& path, const DiscreteMeasure& mu) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  for (int k = 0; k < mu.dim(); ++k) out << "x" << k << ",";
  out << "weight\n";
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Vec p = mu.point(i);
    for (Eigen::Index k = 0; k < p.size(); ++k) out << format_double(p[k]) << ",";
    out << format_double(mu.weight(i)) << "\n";
  }
}

DiscreteMeasure read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  if (!doc.contains("d") || !doc.contains("n") || !doc.contains("points"))
    throw ParseError(path + ": need keys d, n, points");
  const int d = doc["d"].get<int>();
  const int n = doc["n"].get<int>();
  const auto& rows = doc["points"];
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != d)
      throw ParseError(path + ": point " + std::to_string(i) + " has wrong dimension");
    for (int k = 0; k < d; ++k)
      pts(static_cast<Eigen::Index>(i), k) = rows[i][static_cast<std::size_t>(k)].get<double>();
  }
  Eigen::VectorXd w;
  if (doc.contains("weights") && !doc["weights"].empty()) {
    const auto& ws = doc["weights"];
    if (ws.size() != rows.size()) throw ParseError(path + ": weights length mismatch");
    w.resize(static_cast<Eigen::Index>(ws.size()));
    for (std::size_t i = 0; i < ws.size(); ++i)
      w[static_cast<Eigen::Index>(i)] = ws[i].get<double>();
  } else {
    w = density_normalized_weights(pts, n);
  }
  return DiscreteMeasure(d, n, std::move(pts), std::move(w), "json:" + path);
}

void write_json(const std::string& path, const DiscreteMeasure& mu) {
  nlohmann::json doc;
  doc["d"] = mu.dim();
  doc["n"] = mu.intrinsic_dim();
  nlohmann::json pts = nlohmann::json::array(), ws = nlohmann::json::array();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const Vec p = mu.point(i);
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < p.size(); ++k) row.push_back(p[k]);
    pts.push_back(std::move(row));
    ws.push_back(mu.weight(i));
  }
  doc["points"] = std::move(pts);
  doc["weights"] = std::move(ws);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << doc.dump(2) << "\n";
}

DiscreteMeasure read_cloud(const std::string& path, int intrinsic_dim) {
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") return read_json(path);
  return read_csv(path, intrinsic_dim);
}

nlohmann::json make_report(const std::string& operation, nlohmann::json params,
                           nlohmann::json results, double resolution_floor, std::uint64_t seed) {
  return {{"operation", operation},
          {"params", std::move(params)},
          {"results", std::move(results)},
          {"resolution_floor", resolution_floor},
          {"seed", seed}};
}

void write_report(const std::string& path, const nlohmann::json& report) {
  for (const char* key : {"operation", "params", "results", "resolution_floor", "seed"})
    if (!report.contains(key)) throw Error(std::string("report missing key ") + key);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << report.dump(2) << "\n";
}

void write_profile_csv(const std::string& path, const std::vector<ProfileRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "r,beta,bbeta,below_resolution\n";
  for (const auto& row : rows)
    out << format_double(row.r) << "," << format_double(row.beta.value) << ","
        << format_double(row.bilateral.value) << ","
        << (row.beta.below_resolution && row.bilateral.below_resolution ? 1 : 0) << "\n";
}

}  // namespace urect
