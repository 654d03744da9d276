#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "excon/matrix.hpp"

namespace excon {

struct RrefResult {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // strictly increasing
  std::size_t rank = 0;
};

/// Unique reduced row echelon form.
RrefResult rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of the right null space {x : m x = 0}, one vector per free column in
/// ascending order; the vector for free column f has a 1 at f, zeros at the
/// other free columns and -reduced(r, f) at the pivot column of row r.
std::vector<Vector> kernel_basis(const Matrix& m);
/// Basis of {x : x m = 0}, i.e. kernel_basis of the transpose.
std::vector<Vector> left_kernel(const Matrix& m);

/// One solution of m x = b with all free variables zero, or nullopt.
std::optional<Vector> solve(const Matrix& m, const Vector& b);
/// One solution of x m = b (row convention), or nullopt.
std::optional<Vector> solve_left(const Matrix& m, const Vector& b);

/// V / span(relations) with the quotient basis given by the non-pivot
/// coordinates of the relation RREF.
///
/// Row convention: `projection` is ambient x dim and `section` is
/// dim x ambient; section * projection = I and every relation projects to 0.
struct QuotientPresentation {
  std::size_t ambient_dim = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> basis_coordinates;  // ambient index of each quotient basis vector
  Matrix relations_rref;                       // rows span the kernel of the projection
  std::vector<std::size_t> relation_pivots;
  Matrix projection;
  Matrix section;

  Vector project(const Vector& ambient) const;
  Vector lift(const Vector& quotient) const;
};

QuotientPresentation quotient_space(const Field& field, std::size_t ambient_dim, const std::vector<Vector>& relations);

/// Subspace held as RREF rows; coordinates of a member are read off at the
/// pivot columns.
class Subspace {
 public:
  Subspace() = default;
  Subspace(const Field& field, std::size_t ambient_dim, const std::vector<Vector>& spanning);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<Vector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  bool contains(const Vector& v) const;
  /// Coordinates with respect to basis(), or nullopt when v is outside.
  std::optional<Vector> coordinates(const Vector& v) const;

 private:
  Field field_;
  std::size_t ambient_ = 0;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Incremental semi-echelon basis. Rows are reduced in insertion order, so
/// each stored row vanishes at the pivots of all earlier rows.
class EchelonBasis {
 public:
  EchelonBasis(const Field& field, std::size_t ambient_dim, bool track = false);

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t rank() const { return rows_.size(); }
  /// v minus its projection onto the span along the stored pivots.
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const;
  /// Inserts v if independent; returns true when the rank grew.
  bool insert(const Vector& v);
  /// With tracking enabled: coefficients expressing v in the accepted
  /// inserted vectors (in acceptance order), or nullopt when v is outside.
  std::optional<Vector> express(const Vector& v) const;

 private:
  Field field_;
  std::size_t ambient_;
  bool track_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<Vector> exprs_;  // row k = sum exprs_[k][i] * accepted_i
};

/// Indices of a maximal independent subset of `vectors`, chosen greedily.
std::vector<std::size_t> independent_subset(const Field& field, std::size_t ambient_dim, const std::vector<Vector>& vectors);

/// Inverse of a square matrix; throws DimensionMismatch when singular.
Matrix inverse(const Matrix& m);

}  // namespace excon
