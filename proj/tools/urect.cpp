// Command-line front end: generation, analysis pipelines, report emission.
//
// Exit codes: 0 success, 1 error, 2 probe hypothesis not met.

#include <CLI11.hpp>
#include <iostream>
#include <fstream>
#include <sstream>

#include "urect/carleson.hpp"
#include "urect/cubes.hpp"
#include "urect/errors.hpp"
#include "urect/flatness.hpp"
#include "urect/generators.hpp"
#include "urect/io.hpp"
#include "urect/measure.hpp"
#include "urect/probes.hpp"
#include "urect/riesz.hpp"
#include "urect/scans.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kExitHypothesisNotMet = 2;

urect::Vec parse_point(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
  urect::Vec v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
  return vals;
}

nlohmann::json vec_json(const urect::Vec& v) {
  nlohmann::json arr = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) arr.push_back(v[k]);
  return arr;
}

void emit(const std::string& path, nlohmann::json report) {
  report["version"] = kVersion;
  urect::write_report(path, report);
}

struct CloudArgs {
  std::string input;
  int n = 1;
};

void add_cloud_args(CLI::App* sub, CloudArgs& args) {
  sub->add_option("--input", args.input, "point cloud file (.csv or .json)")->required();
  sub->add_option("--n", args.n, "intrinsic dimension (CSV input)");
  sub->set_config("--config");
}

urect::CubeId pick_root(const urect::CubeForest& forest, const std::string& spec) {
  if (spec == "top") {
    const auto& gen = forest.generation(forest.j_min());
    int best = 0;
    for (std::size_t k = 1; k < gen.size(); ++k)
      if (gen[k].mass > gen[static_cast<std::size_t>(best)].mass) best = static_cast<int>(k);
    return {forest.j_min(), best};
  }
  const auto vals = parse_list(spec);
  if (vals.size() != 2) throw urect::ParameterError("--root must be 'top' or 'j,ordinal'");
  return {static_cast<int>(vals[0]), static_cast<int>(vals[1])};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-measure geometry toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  int parallel = 1;  // outputs are independent of the degree (ordered reductions)
  app.add_option("--parallel", parallel, "worker threads");

  // ---- generate ----------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("generate", "sample a canonical measure");
  std::string gen_kind = "flat-plane", gen_out, gen_report, gen_config;
  urect::GeneratorSpec gspec;
  gen_cmd->add_option("--kind", gen_kind, "flat-plane|light-cone|cone-product|lipschitz-graph|four-corner-cantor");
  gen_cmd->add_option("--d", gspec.d);
  gen_cmd->add_option("--n", gspec.n);
  gen_cmd->add_option("--extent", gspec.extent);
  gen_cmd->add_option("--count", gspec.count);
  gen_cmd->add_option("--slope", gspec.slope);
  gen_cmd->add_option("--seed", gspec.seed);
  gen_cmd->add_option("--spec", gen_config, "key=value generator spec file");
  gen_cmd->add_option("-o,--output", gen_out)->required();
  gen_cmd->add_option("--report", gen_report);
  gen_cmd->set_config("--config");

  // ---- uniformity --------------------------------------------------------
  auto* uni_cmd = app.add_subcommand("uniformity", "density scan mu(B)/r^n");
  CloudArgs uni_args;
  int uni_samples = 50;
  double uni_rmin = 0.0, uni_rmax = 0.0;
  std::uint64_t uni_seed = 0;
  std::string uni_report = "uniformity.json";
  add_cloud_args(uni_cmd, uni_args);
  uni_cmd->add_option("--samples", uni_samples);
  uni_cmd->add_option("--r-min", uni_rmin)->required();
  uni_cmd->add_option("--r-max", uni_rmax)->required();
  uni_cmd->add_option("--seed", uni_seed);
  uni_cmd->add_option("--report", uni_report);

  // ---- cubes -------------------------------------------------------------
  auto* cubes_cmd = app.add_subcommand("cubes", "build the dyadic cell forest");
  CloudArgs cubes_args;
  int cb_jmin = 0, cb_jmax = 4;
  bool cb_members = false;
  std::string cubes_report = "cubes.json";
  add_cloud_args(cubes_cmd, cubes_args);
  cubes_cmd->add_option("--j-min", cb_jmin);
  cubes_cmd->add_option("--j-max", cb_jmax);
  cubes_cmd->add_flag("--members", cb_members, "include member indices (large)");
  cubes_cmd->add_option("--report", cubes_report);

  // ---- beta --------------------------------------------------------------
  auto* beta_cmd = app.add_subcommand("beta", "flatness profile at a center");
  CloudArgs beta_args;
  std::string beta_center, beta_radii, beta_csv, beta_report = "beta.json";
  int beta_m_dim = -1;
  add_cloud_args(beta_cmd, beta_args);
  beta_cmd->add_option("--center", beta_center, "comma-separated coordinates")->required();
  beta_cmd->add_option("--radii", beta_radii)->required();
  beta_cmd->add_option("--m", beta_m_dim, "fit dimension (default: intrinsic)");
  beta_cmd->add_option("--csv", beta_csv);
  beta_cmd->add_option("--report", beta_report);

  // ---- riesz -------------------------------------------------------------
  auto* riesz_cmd = app.add_subcommand("riesz", "truncated transform scan");
  CloudArgs riesz_args;
  int riesz_samples = 100;
  std::uint64_t riesz_seed = 0;
  std::string riesz_csv, riesz_report = "riesz.json";
  add_cloud_args(riesz_cmd, riesz_args);
  riesz_cmd->add_option("--samples", riesz_samples);
  riesz_cmd->add_option("--seed", riesz_seed);
  riesz_cmd->add_option("--csv", riesz_csv);
  riesz_cmd->add_option("--report", riesz_report);

  // ---- carleson ----------------------------------------------------------
  auto* car_cmd = app.add_subcommand("carleson", "packing check of {bbeta > threshold}");
  CloudArgs car_args;
  int car_jmin = 0, car_jmax = 4;
  double car_thr = 0.1, car_c = 10.0;
  std::string car_report = "carleson.json";
  add_cloud_args(car_cmd, car_args);
  car_cmd->add_option("--j-min", car_jmin);
  car_cmd->add_option("--j-max", car_jmax);
  car_cmd->add_option("--threshold", car_thr, "bilateral flatness threshold");
  car_cmd->add_option("--c", car_c, "target packing constant");
  car_cmd->add_option("--report", car_report);

  // ---- wcd ---------------------------------------------------------------
  auto* wcd_cmd = app.add_subcommand("wcd", "constant-density surrogate scan");
  CloudArgs wcd_args;
  int wcd_jmin = 0, wcd_jmax = 4;
  double wcd_eps = 0.1, wcd_c1p = 4.0;
  std::string wcd_csv, wcd_report = "wcd.json";
  add_cloud_args(wcd_cmd, wcd_args);
  wcd_cmd->add_option("--j-min", wcd_jmin);
  wcd_cmd->add_option("--j-max", wcd_jmax);
  wcd_cmd->add_option("--eps", wcd_eps);
  wcd_cmd->add_option("--c1p", wcd_c1p);
  wcd_cmd->add_option("--csv", wcd_csv);
  wcd_cmd->add_option("--report", wcd_report);

  // ---- trees -------------------------------------------------------------
  auto* trees_cmd = app.add_subcommand("trees", "corona decomposition of flagged cubes");
  CloudArgs trees_args;
  int tr_jmin = 0, tr_jmax = 4;
  double tr_eps = 0.2;
  std::string tr_root = "top", trees_report = "trees.json";
  add_cloud_args(trees_cmd, trees_args);
  trees_cmd->add_option("--j-min", tr_jmin);
  trees_cmd->add_option("--j-max", tr_jmax);
  trees_cmd->add_option("--eps", tr_eps);
  trees_cmd->add_option("--root", tr_root, "'top' or 'j,ordinal'");
  trees_cmd->add_option("--report", trees_report);

  // ---- probe -------------------------------------------------------------
  auto* probe_cmd = app.add_subcommand("probe", "run one lemma probe");
  CloudArgs probe_args;
  std::string probe_name, probe_center, probe_report = "probe.json";
  double probe_r = 1.0;
  int probe_m = -1;
  urect::ProbeConfig pc;
  add_cloud_args(probe_cmd, probe_args);
  probe_cmd
      ->add_option("--name", probe_name,
                   "find-flat-ball|touching-ball|touch-pairing|descent|flat-to-bilateral|"
                   "stability|persistence|bpg")
      ->required();
  probe_cmd->add_option("--center", probe_center)->required();
  probe_cmd->add_option("--r", probe_r);
  probe_cmd->add_option("--m", probe_m);
  probe_cmd->add_option("--eps", pc.eps);
  probe_cmd->add_option("--delta", pc.delta);
  probe_cmd->add_option("--delta0", pc.delta0);
  probe_cmd->add_option("--eta", pc.eta);
  probe_cmd->add_option("--tau", pc.tau);
  probe_cmd->add_option("--kappa", pc.kappa);
  probe_cmd->add_option("--N", pc.N);
  probe_cmd->add_option("--M", pc.M);
  probe_cmd->add_option("--c1", pc.c1);
  probe_cmd->add_option("--samples", pc.samples);
  probe_cmd->add_option("--seed", pc.seed);
  probe_cmd->add_option("--report", probe_report);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      if (!gen_config.empty()) {
        std::ifstream in(gen_config);
        if (!in) throw urect::ParseError("cannot open " + gen_config);
        gspec = urect::GeneratorSpec::from_kv(in);
      } else {
        gspec.kind = urect::GeneratorSpec::kind_from_name(gen_kind);
      }
      const auto mu = urect::generate(gspec);
      if (gen_out.size() > 5 && gen_out.substr(gen_out.size() - 5) == ".json")
        urect::write_json(gen_out, mu);
      else
        urect::write_csv(gen_out, mu);
      if (!gen_report.empty()) {
        nlohmann::json params;
        std::istringstream kv(gspec.to_kv());
        std::string line;
        while (std::getline(kv, line)) {
          const auto eq = line.find('=');
          if (eq != std::string::npos) params[line.substr(0, eq)] = line.substr(eq + 1);
        }
        emit(gen_report, urect::make_report("generate", params,
                                            {{"count", mu.size()},
                                             {"total_mass", mu.total_mass()},
                                             {"output", gen_out}},
                                            mu.resolution_floor(), gspec.seed));
      }
    } else if (*uni_cmd) {
      const auto mu = urect::read_cloud(uni_args.input, uni_args.n);
      const auto rep = urect::uniformity_scan(mu, uni_samples, uni_rmin, uni_rmax, uni_seed);
      nlohmann::json doc = rep.to_json();
      doc["params"] = {{"samples", uni_samples}, {"r_min", uni_rmin}, {"r_max", uni_rmax}};
      emit(uni_report, doc);
    } else if (*cubes_cmd) {
      const auto mu = urect::read_cloud(cubes_args.input, cubes_args.n);
      const auto forest = urect::build_cubes(mu, cb_jmin, cb_jmax);
      emit(cubes_report,
           urect::make_report("cubes", {{"j_min", cb_jmin}, {"j_max", cb_jmax}},
                              forest.to_json(cb_members), mu.resolution_floor(), 0));
    } else if (*beta_cmd) {
      const auto mu = urect::read_cloud(beta_args.input, beta_args.n);
      const urect::Vec center = parse_point(beta_center);
      const auto radii = parse_list(beta_radii);
      const int m = beta_m_dim < 0 ? mu.intrinsic_dim() : beta_m_dim;
      nlohmann::json rows = nlohmann::json::array();
      if (m == mu.intrinsic_dim()) {
        const auto profile = urect::beta_profile(mu, center, radii);
        for (const auto& row : profile)
          rows.push_back({{"r", row.r},
                          {"beta", row.beta.value},
                          {"bbeta", row.bilateral.value},
                          {"below_resolution",
                           row.beta.below_resolution && row.bilateral.below_resolution}});
        if (!beta_csv.empty()) urect::write_profile_csv(beta_csv, profile);
      } else {
        for (double r : radii) {
          const auto b = urect::beta_m(mu, urect::Ball(center, r), m);
          rows.push_back({{"r", r}, {"beta", b.value}, {"below_resolution", b.below_resolution}});
        }
      }
      emit(beta_report,
           urect::make_report("beta", {{"center", vec_json(center)}, {"m", m}},
                              {{"rows", rows}}, mu.resolution_floor(), 0));
    } else if (*riesz_cmd) {
      const auto mu = urect::read_cloud(riesz_args.input, riesz_args.n);
      urect::ProbeConfig cfg;
      cfg.samples = riesz_samples;
      cfg.seed = riesz_seed;
      const auto rep = urect::riesz_bound_scan(mu, cfg);
      if (!riesz_csv.empty()) {
        std::ofstream out(riesz_csv);
        out << "r,s,ratio,pairing\n";
        for (const auto& row : rep.rows)
          out << urect::format_double(row.r) << "," << urect::format_double(row.s) << ","
              << urect::format_double(row.ratio) << "," << urect::format_double(row.pairing)
              << "\n";
      }
      emit(riesz_report, rep.to_json());
    } else if (*car_cmd) {
      const auto mu = urect::read_cloud(car_args.input, car_args.n);
      const auto forest = urect::build_cubes(mu, car_jmin, car_jmax);
      const auto mun = forest.normalized_measure(mu);
      urect::CubeFamily family;
      for (int j = forest.j_min(); j <= forest.j_max(); ++j)
        for (const auto& q : forest.generation(j))
          if (urect::bbeta(mun, urect::cube_ball(q)).value > car_thr)
            family.insert({j, q.ordinal});
      const auto rep = urect::carleson_check(forest, family, car_c);
      nlohmann::json doc = rep.to_json();
      emit(car_report,
           urect::make_report("carleson",
                              {{"threshold", car_thr}, {"c", car_c},
                               {"j_min", car_jmin}, {"j_max", car_jmax}},
                              doc, mu.resolution_floor(), 0));
    } else if (*wcd_cmd) {
      const auto mu = urect::read_cloud(wcd_args.input, wcd_args.n);
      const auto forest = urect::build_cubes(mu, wcd_jmin, wcd_jmax);
      const auto rep = urect::wcd_scan(mu, forest, wcd_eps, wcd_c1p);
      if (!wcd_csv.empty()) {
        std::ofstream out(wcd_csv);
        for (int k = 0; k < mu.dim(); ++k) out << "x" << k << ",";
        out << "r,deviation,lambda,member\n";
        for (const auto& row : rep.rows) {
          for (Eigen::Index k = 0; k < row.x.size(); ++k)
            out << urect::format_double(row.x[k]) << ",";
          out << urect::format_double(row.r) << "," << urect::format_double(row.deviation) << ","
              << urect::format_double(row.lambda) << "," << (row.member ? 1 : 0) << "\n";
        }
      }
      emit(wcd_report,
           urect::make_report("wcd", {{"eps", wcd_eps}, {"c1p", wcd_c1p}}, rep.to_json(),
                              mu.resolution_floor(), 0));
    } else if (*trees_cmd) {
      const auto mu = urect::read_cloud(trees_args.input, trees_args.n);
      const auto forest = urect::build_cubes(mu, tr_jmin, tr_jmax);
      const auto flags = urect::neps_flags(mu, forest, tr_eps);
      const urect::CubeId root = pick_root(forest, tr_root);
      const auto trees = urect::tree_decompose(forest, flags, root);
      const auto structure = urect::validate_trees(trees, forest, flags, root);
      if (!structure.all_ok()) throw urect::Error("tree invariants failed validation");
      nlohmann::json tree_rows = nlohmann::json::array();
      for (const auto& t : trees) {
        nlohmann::json members = nlohmann::json::array(), stop = nlohmann::json::array();
        for (auto id : t.members) members.push_back({id.j, id.ordinal});
        for (auto id : t.stop) stop.push_back({id.j, id.ordinal});
        nlohmann::json pb;
        if (t.pb) pb = {t.pb->j, t.pb->ordinal};
        tree_rows.push_back({{"root", {t.root.j, t.root.ordinal}},
                             {"member_ids", members},
                             {"stop_ids", stop},
                             {"pb_id", pb}});
      }
      emit(trees_report,
           urect::make_report("trees",
                              {{"eps", tr_eps}, {"root", {root.j, root.ordinal}}},
                              {{"trees", tree_rows}, {"tree_count", trees.size()}},
                              mu.resolution_floor(), 0));
    } else if (*probe_cmd) {
      const auto mu = urect::read_cloud(probe_args.input, probe_args.n);
      const urect::Vec center = parse_point(probe_center);
      const urect::Ball b(center, probe_r);
      bool hypothesis_met = true;
      nlohmann::json measurements, witnesses;
      if (probe_name == "find-flat-ball") {
        const auto res = urect::find_flat_ball(mu, b, pc.eps, pc.tau / 16.0, probe_m);
        measurements = {{"found", res.found}, {"beta", res.beta}, {"tau", res.tau}};
        if (res.found)
          witnesses = {{"center", vec_json(res.ball.center)}, {"radius", res.ball.radius}};
      } else if (probe_name == "touching-ball") {
        const auto res = urect::touching_ball(mu, b);
        measurements = {{"radius", res.empty_ball.radius}};
        witnesses = {{"center", vec_json(res.empty_ball.center)},
                     {"z0", vec_json(res.z0)},
                     {"outward", vec_json(res.outward)}};
      } else if (probe_name == "touch-pairing") {
        const auto res = urect::touch_pairing_probe(mu, b, pc);
        hypothesis_met = res.hypothesis_met;
        nlohmann::json ladder = nlohmann::json::array();
        for (const auto& [r, v] : res.ladder) ladder.push_back({{"r", r}, {"pairing", v}});
        measurements = {{"beta_d_minus_1", res.beta_d_minus_1},
                        {"max_pairing", res.max_pairing},
                        {"reached_M", res.reached_M},
                        {"ladder", ladder}};
        witnesses = {{"z0", vec_json(res.touch.z0)}};
      } else if (probe_name == "descent") {
        const auto res = urect::dimension_descent(mu, b, probe_m, pc.eps, pc);
        hypothesis_met = res.hypothesis_met;
        measurements = {{"beta_m", res.beta_m_value},
                        {"found", res.found},
                        {"beta_lower", res.beta_lower}};
        if (res.found)
          witnesses = {{"center", vec_json(res.ball.center)}, {"radius", res.ball.radius}};
      } else if (probe_name == "flat-to-bilateral") {
        const auto res = urect::flat_to_bilateral_probe(mu, center, probe_r, pc.delta);
        hypothesis_met = res.hypothesis_met;
        measurements = {{"beta_large", res.beta_large},
                        {"bbeta", res.bilateral_small.value}};
      } else if (probe_name == "stability") {
        const auto res = urect::stability_probe(mu, b, pc);
        hypothesis_met = res.hypothesis_met;
        nlohmann::json ladder = nlohmann::json::array();
        for (const auto& [r, v] : res.ladder) ladder.push_back({{"r", r}, {"beta", v}});
        measurements = {{"ladder", ladder}, {"bbeta", res.bilateral.value}};
      } else if (probe_name == "persistence") {
        const auto res = urect::persistence_probe(mu, b, pc.delta, pc.eta, pc.samples);
        hypothesis_met = res.hypothesis_met;
        measurements = {{"beta", res.beta_value},
                        {"fraction", res.fraction},
                        {"total", res.total},
                        {"worst_bbeta", res.worst_bbeta}};
        if (res.worst.radius > 0.0)
          witnesses = {{"worst_center", vec_json(res.worst.center)},
                       {"worst_radius", res.worst.radius}};
      } else if (probe_name == "bpg") {
        const auto res = urect::bpg_check(mu, b, pc.M);
        measurements = {{"theta", res.theta}, {"selected", res.selected.size()}};
      } else {
        throw urect::ParameterError("unknown probe " + probe_name);
      }
      nlohmann::json doc = urect::make_report(
          "probe",
          {{"probe", probe_name}, {"center", vec_json(center)}, {"r", probe_r},
           {"eps", pc.eps}, {"delta", pc.delta}, {"delta0", pc.delta0}, {"eta", pc.eta},
           {"tau", pc.tau}, {"kappa", pc.kappa}, {"N", pc.N}, {"M", pc.M}, {"c1", pc.c1},
           {"samples", pc.samples}},
          {{"hypothesis_met", hypothesis_met}, {"measurements", measurements},
           {"witnesses", witnesses}},
          mu.resolution_floor(), pc.seed);
      emit(probe_report, doc);
      if (!hypothesis_met) return kExitHypothesisNotMet;
    }
  } catch (const urect::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
