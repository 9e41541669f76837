#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "urect/measure.hpp"

namespace urect {

/// Recipe for one of the canonical example measures.
struct GeneratorSpec {
  enum class Kind { FlatPlane, LightCone, ConeProduct, LipschitzGraph, FourCornerCantor };

  Kind kind = Kind::FlatPlane;
  int d = 2;
  int n = 1;
  double extent = 1.0;        // radius of the generation region
  std::size_t count = 1000;   // sample budget
  double slope = 0.5;         // Lipschitz constant (graph kind only)
  std::uint64_t seed = 0;

  void validate() const;
  std::string to_kv() const;                      // plain-text key=value config
  static GeneratorSpec from_kv(std::istream& in);
  static Kind kind_from_name(const std::string& name);
  static std::string kind_name(Kind k);
};

/// Samples the measure described by `spec`. Identical specs (including seed)
/// produce bit-identical output.
DiscreteMeasure generate(const GeneratorSpec& spec);

/// Analytic gradient bound and evaluation of the generated Lipschitz graph,
/// exposed so tests can reason about smooth points of the graph.
struct GraphFunction {
  int n = 0, codim = 0;
  Eigen::MatrixXd amplitude;   // codim x terms
  Eigen::MatrixXd frequencies; // terms x n
  Eigen::VectorXd phases;      // terms

  Eigen::VectorXd value(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const;  // codim x n
};

/// The graph function a LipschitzGraph spec would sample (same seed streams).
GraphFunction graph_function(const GeneratorSpec& spec);

}  // namespace urect
