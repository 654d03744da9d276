#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "excon/algebra.hpp"

namespace excon {

enum class Side { Left, Right };

std::string to_string(Side s);

/// Finite-dimensional one-sided module. action(i) is the dim x dim matrix of
/// the basis element b_i in row convention: x * action(i) is b_i . x for a
/// left module and x . b_i for a right module. Hence
///   left:  action(j) * action(i) = sum_k c_ij^k action(k)
///   right: action(i) * action(j) = sum_k c_ij^k action(k).
class Module {
 public:
  Module() = default;
  /// Validates the module laws on all basis pairs; throws InvalidModule.
  static Module make(AlgebraPtr algebra, Side side, std::size_t dim, std::vector<Matrix> action);
  static Module trusted(AlgebraPtr algebra, Side side, std::size_t dim, std::vector<Matrix> action);

  /// A as a left (resp. right) module over itself.
  static Module regular(const AlgebraPtr& a, Side side);
  /// The free module A^n with componentwise action; coordinates of copy j
  /// occupy [j * dim A, (j + 1) * dim A).
  static Module free(const AlgebraPtr& a, Side side, std::size_t n);
  static Module zero(const AlgebraPtr& a, Side side);

  const AlgebraPtr& algebra() const { return algebra_; }
  const Field& field() const { return algebra_->field(); }
  Side side() const { return side_; }
  std::size_t dim() const { return dim_; }
  const Matrix& action(std::size_t i) const { return action_.at(i); }
  const std::vector<Matrix>& actions() const { return action_; }

  /// Matrix of the algebra element a acting.
  Matrix action_of(const Vector& a) const;
  /// a . x (left) or x . a (right).
  Vector act(const Vector& a, const Vector& x) const { return vec_mat(x, action_of(a)); }
  Vector act_basis(std::size_t i, const Vector& x) const { return vec_mat(x, action_[i]); }

  /// First violated law, as a human-readable description with witness.
  std::optional<std::pair<std::string, std::vector<std::size_t>>> find_failure() const;

 private:
  AlgebraPtr algebra_;
  Side side_ = Side::Left;
  std::size_t dim_ = 0;
  std::vector<Matrix> action_;
};

/// Restriction of scalars along f: R -> A (same side).
Module restrict_module(const Module& m, const AlgebraMorphism& f);
/// A right A-module as a left module over opposite(A) (and conversely); the
/// action matrices are unchanged.
Module as_opposite(const Module& m, const AlgebraPtr& opposite_algebra);
Module direct_sum(const Module& x, const Module& y);

/// The submodule generated by `generators`, as a subspace of x.
Subspace generated_submodule(const Module& x, const std::vector<Vector>& generators);
/// Greedy generating set: basis vectors of x not in the submodule generated
/// by the earlier choices.
std::vector<Vector> greedy_generators(const Module& x);
/// Greedy generators of a submodule given by a spanning set.
std::vector<Vector> greedy_generators(const Module& x, const std::vector<Vector>& span);

struct QuotientModule {
  Module module;
  QuotientPresentation presentation;  // projection x -> x/sub, section back
};

/// x / sub; throws NotStable (witness: spanning index, algebra basis index)
/// unless sub is action-stable.
QuotientModule quotient_module(const Module& x, const std::vector<Vector>& sub);

/// Submodule spanned by `basis` vectors, with the induced action in the
/// coordinates of the RREF basis of the span. The span must be stable.
struct Submodule {
  Module module;
  Subspace span;  // module basis = span.basis()
};
Submodule submodule(const Module& x, const std::vector<Vector>& spanning);

/// S-T-bimodule. left_action(i) acts by s_i on the left and right_action(j)
/// by t_j on the right, both in row convention; actions commute:
/// left_action(i) * right_action(j) = right_action(j) * left_action(i).
class Bimodule {
 public:
  Bimodule() = default;
  /// Validates both module laws and the commuting law; throws InvalidBimodule.
  static Bimodule make(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                       std::vector<Matrix> right_action);
  static Bimodule trusted(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                          std::vector<Matrix> right_action);
  /// A as an A-A-bimodule.
  static Bimodule regular(const AlgebraPtr& a);

  const AlgebraPtr& left_algebra() const { return left_; }
  const AlgebraPtr& right_algebra() const { return right_; }
  const Field& field() const { return left_->field(); }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& left_actions() const { return lact_; }
  const std::vector<Matrix>& right_actions() const { return ract_; }

  Module as_left() const { return Module::trusted(left_, Side::Left, dim_, lact_); }
  Module as_right() const { return Module::trusted(right_, Side::Right, dim_, ract_); }

  Vector left_act(const Vector& s, const Vector& x) const;
  Vector right_act(const Vector& x, const Vector& t) const;

 private:
  AlgebraPtr left_;
  AlgebraPtr right_;
  std::size_t dim_ = 0;
  std::vector<Matrix> lact_;
  std::vector<Matrix> ract_;
};

/// Restriction of a G-H bimodule along f: S -> G and g: T -> H.
Bimodule restrict_bimodule(const Bimodule& m, const AlgebraMorphism& f, const AlgebraMorphism& g);

struct BimoduleReport {
  bool ok = true;
  std::string failure;               // "left", "right" or "commuting"
  std::vector<std::size_t> witness;  // basis indices of the violation
  std::string detail;
};
BimoduleReport check_bimodule(const Bimodule& b);

/// Module homomorphism, a dim(source) x dim(target) matrix.
struct ModuleMap {
  Module source;
  Module target;
  Matrix matrix;
};
bool is_module_map(const Module& y, const Module& x, const Matrix& f);

/// Basis of Hom(y, x) as matrices.
class HomSpace {
 public:
  HomSpace() = default;
  HomSpace(Module source, Module target, std::vector<Matrix> basis);

  const Module& source() const { return source_; }
  const Module& target() const { return target_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Matrix>& basis() const { return basis_; }
  /// Coordinates of a homomorphism in basis(), or nullopt.
  std::optional<Vector> coordinates(const Matrix& f) const;
  Matrix element(const Vector& coords) const;

 private:
  Module source_;
  Module target_;
  std::vector<Matrix> basis_;
  std::shared_ptr<const EchelonBasis> span_;  // flattened basis, with coordinate tracking
};

/// Throws AlgebraMismatch unless both modules are over the same algebra
/// and side.
HomSpace hom_space(const Module& y, const Module& x);

struct EndAlgebra {
  AlgebraPtr algebra;
  HomSpace hom;  // basis element i of the algebra is hom.basis()[i]
};
/// End(x) with multiplication f g = first f then g (matrix product F G).
EndAlgebra end_algebra(const Module& x);

/// t (x)_R s for a right module t and a left module s, presented as a
/// quotient of t (x)_k s; the ambient index of t_a (x) s_b is a * dim(s) + b.
struct TensorProduct {
  std::size_t dim_t = 0;
  std::size_t dim_s = 0;
  QuotientPresentation quotient;
  std::size_t dim() const { return quotient.dim; }
  std::size_t ambient_index(std::size_t a, std::size_t b) const { return a * dim_s + b; }
  /// Class of the pure tensor t (x) s.
  Vector pure(const Vector& t, const Vector& s) const;
};
TensorProduct tensor_over(const Module& t, const Module& s);

/// x (x)_R y for an A-R-bimodule x and an R-C-bimodule y, as an A-C-bimodule
/// on the quotient basis of `tensor`.
struct TensorBimodule {
  Bimodule bimodule;
  TensorProduct tensor;
};
TensorBimodule tensor_bimodule(const Bimodule& x, const Bimodule& y);

}  // namespace excon
