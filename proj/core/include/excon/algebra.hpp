#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excon/linalg.hpp"
#include "excon/matrix.hpp"

namespace excon {

/// Nonzero (index, coefficient) pairs in ascending index order.
using SparseVector = std::vector<std::pair<std::uint32_t, Scalar>>;

SparseVector to_sparse(const Vector& v);
Vector to_dense(const Field& f, const SparseVector& v, std::size_t dim);

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// First violation found by the axiom check.
struct AxiomFailure {
  enum class Kind { Associativity, LeftUnit, RightUnit } kind;
  std::vector<std::size_t> witness;  // (i, j, k) or (i)
  std::string describe() const;
};

/// Finite-dimensional unital associative algebra given by structure
/// constants: b_i * b_j = sum_k c_ij^k b_k.
class Algebra {
 public:
  /// Validates associativity and the unit law on all basis triples.
  /// Throws NonAssociative / BadUnit with the witness indices.
  static AlgebraPtr make(Field field, std::vector<std::string> labels, std::vector<SparseVector> mult, Vector unit);
  /// Dense form: mult[i][j] is the coordinate vector of b_i * b_j.
  static AlgebraPtr make(Field field, std::vector<std::string> labels, const std::vector<std::vector<Vector>>& mult, Vector unit);
  /// Skips validation; only for constructions whose axioms hold by design
  /// (matrix algebras over verified algebras, subalgebras, endomorphism
  /// algebras, ...).
  static AlgebraPtr make_trusted(Field field, std::vector<std::string> labels, std::vector<SparseVector> mult, Vector unit);

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  /// Index of a basis label, or nullopt.
  std::optional<std::size_t> index_of(const std::string& label) const;

  const SparseVector& product(std::size_t i, std::size_t j) const { return mult_[i * dim_ + j]; }
  const Vector& unit() const { return unit_; }
  Vector basis_vector(std::size_t i) const { return unit_vector(field_, dim_, i); }
  Vector zero() const { return zero_vector(field_, dim_); }

  Vector multiply(const Vector& a, const Vector& b) const;
  /// Row i is a * b_i, so x * L = a * x.
  Matrix left_mult_matrix(const Vector& a) const;
  /// Row i is b_i * a, so x * R = x * a.
  Matrix right_mult_matrix(const Vector& a) const;
  Matrix left_mult_basis(std::size_t i) const;
  Matrix right_mult_basis(std::size_t i) const;

  bool is_commutative() const;
  std::optional<AxiomFailure> find_axiom_failure() const;

 private:
  Algebra(Field field, std::vector<std::string> labels, std::vector<SparseVector> mult, Vector unit);

  Field field_;
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<SparseVector> mult_;  // index i * dim + j
  Vector unit_;
};

/// Structure constants and units are identical (labels are ignored).
bool same_structure(const Algebra& a, const Algebra& b);
/// First basis pair (i, j) whose products differ, if any.
std::optional<std::pair<std::size_t, std::size_t>> first_structure_difference(const Algebra& a, const Algebra& b);

struct MorphismReport {
  bool ok = true;
  std::string failure;               // "unit", "multiplicativity" or "shape"
  std::vector<std::size_t> witness;  // basis pair for multiplicativity
};

/// Unit-preserving multiplicative linear map, stored as a
/// dim(source) x dim(target) matrix acting on row vectors.
class AlgebraMorphism {
 public:
  AlgebraMorphism() = default;
  /// Verifies the morphism laws; throws NotAMorphism.
  AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix);
  static AlgebraMorphism trusted(AlgebraPtr source, AlgebraPtr target, Matrix matrix);

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const Matrix& matrix() const { return matrix_; }
  Vector apply(const Vector& v) const { return vec_mat(v, matrix_); }
  Vector image_of_basis(std::size_t i) const { return matrix_.row(i); }

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  Matrix matrix_;
};

MorphismReport check_morphism(const AlgebraPtr& source, const AlgebraPtr& target, const Matrix& matrix);
MorphismReport check_morphism(const AlgebraMorphism& f);

AlgebraMorphism identity_morphism(const AlgebraPtr& a);
/// First f, then g.
AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g);

struct AlgebraElement {
  AlgebraPtr parent;
  Vector coords;
};

/// M_n(a) with basis E_ij (x) b_k ordered by i, then j, then k; labels
/// "E<i><j>.<label>" (1-based, comma-separated when n > 9).
AlgebraPtr matrix_algebra(const AlgebraPtr& a, std::size_t n);
/// Index of E_ij (x) b_k in matrix_algebra(a, n).
inline std::size_t matrix_index(std::size_t n, std::size_t d, std::size_t i, std::size_t j, std::size_t k) {
  return (i * n + j) * d + k;
}

struct Subalgebra {
  AlgebraPtr algebra;
  AlgebraMorphism inclusion;
  std::vector<std::size_t> chosen;  // indices of the spanning vectors kept as basis
};

/// The span of `vectors` as a subalgebra. The basis is the greedily chosen
/// independent subset of `vectors`, in the given order. Throws NotClosed with
/// the witness basis pair, or UnitMissing.
Subalgebra subalgebra_from_spanning(const AlgebraPtr& a, const std::vector<Vector>& vectors,
                                    std::vector<std::string> labels = {});

AlgebraPtr opposite(const AlgebraPtr& a);

struct ProductAlgebra {
  AlgebraPtr algebra;
  AlgebraMorphism proj1;
  AlgebraMorphism proj2;
};
/// a x b with the basis of a followed by the basis of b.
ProductAlgebra product(const AlgebraPtr& a, const AlgebraPtr& b);

/// Re-expresses `a` in the basis given by the rows of the invertible matrix
/// `basis` (old coordinates).
AlgebraPtr transport(const AlgebraPtr& a, const Matrix& basis, std::vector<std::string> labels = {});

/// Greedy algebra generators: basis indices b_i not in the subalgebra
/// generated by the earlier choices.
std::vector<std::size_t> algebra_generators(const Algebra& a);

struct QuotientAlgebra {
  AlgebraPtr algebra;
  QuotientPresentation presentation;  // a -> a / ideal
};
/// a / ideal for a two-sided ideal given by spanning vectors; throws NotIdeal
/// with the witness (spanning index, basis index).
QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const std::vector<Vector>& ideal);

/// The field itself as a 1-dimensional algebra labelled "1".
AlgebraPtr ground_field_algebra(const Field& f);

}  // namespace excon
