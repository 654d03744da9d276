#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "excon/algebra.hpp"
#include "excon/module.hpp"

namespace excon {

/// The triangular algebra [[S, M], [0, T]] of an S-T-bimodule M, with basis
/// S, then M, then T; (s, x, t)(s', x', t') = (ss', sx' + xt', tt').
struct TriangularAlgebra {
  AlgebraPtr algebra;
  std::size_t dim_s = 0;
  std::size_t dim_m = 0;
  std::size_t dim_t = 0;
  Vector e1;  // (1, 0, 0)
  Vector e2;  // (0, 0, 1)

  std::size_t offset_m() const { return dim_s; }
  std::size_t offset_t() const { return dim_s + dim_m; }
  Vector embed(const Vector& s, const Vector& x, const Vector& t) const;
};

/// Throws InvalidBimodule when the bimodule laws fail.
TriangularAlgebra triangular_algebra(const Bimodule& m);

struct QuiverArrow {
  std::string name;
  std::string source;
  std::string target;
};

/// coefficient * f_1 f_2 ... f_k, composed left to right (first f_1); each
/// factor names an arrow or a vertex.
struct PathTerm {
  Scalar coefficient;
  std::vector<std::string> factors;
};

struct QuiverPresentation {
  Field field;
  std::vector<std::string> vertices;
  std::vector<QuiverArrow> arrows;
  std::vector<std::vector<PathTerm>> relations;
  std::size_t max_length = 12;
};

struct QuiverAlgebra {
  AlgebraPtr algebra;
  std::vector<std::size_t> vertex_basis;  // basis index of each vertex idempotent
  std::vector<std::size_t> arrow_basis;   // basis index of each arrow, or npos when it reduces
};

/// kQ / I. Relations are row-reduced over length-then-lex path order (arrows
/// in declaration order) and used as rewriting rules leading path -> rest; the
/// basis is the irreducible paths, enumerated by length. Labels: "e<vertex>"
/// for trivial paths, arrow names joined by "." otherwise.
///
/// Throws UnresolvedReference for unknown names, BadRelation for
/// non-composable or endpoint-mismatched terms (and for rules that are not
/// confluent, detected by the associativity check), NotFiniteDimensional when
/// an irreducible path exceeds max_length.
QuiverAlgebra elaborate_quiver(const QuiverPresentation& q);

}  // namespace excon
