#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excon/algebra.hpp"
#include "excon/error.hpp"
#include "excon/module.hpp"

namespace excon {

enum class ExactnessStage { Injectivity, MiddleExactness, Surjectivity };

std::string to_string(ExactnessStage s);

/// Ranks certifying exactness of 0 -> R -> S (+) T -> M -> 0.
struct ExactnessCertificate {
  std::size_t dim_r = 0;
  std::size_t dim_s = 0;
  std::size_t dim_t = 0;
  std::size_t dim_m = 0;
  std::size_t rank_inclusion = 0;   // rank of r -> (lambda r, mu r)
  std::size_t rank_difference = 0;  // rank of (s, t) -> s m - m t
};

/// A verified exact context (lambda: R -> S, mu: R -> T, M, m).
struct ExactContext {
  AlgebraMorphism lambda;
  AlgebraMorphism mu;
  Bimodule bimodule;  // S-T
  Vector m;
  Matrix s_times_m;  // dim S x dim M, row i = s_i m
  Matrix m_times_t;  // dim T x dim M, row j = m t_j
  ExactnessCertificate certificate;

  const AlgebraPtr& r() const { return lambda.source(); }
  const AlgebraPtr& s() const { return lambda.target(); }
  const AlgebraPtr& t() const { return mu.target(); }
  const Field& field() const { return r()->field(); }

  /// Some (s, t) with x = s m + m t; unique up to (lambda r, -mu r).
  std::pair<Vector, Vector> decompose(const Vector& x) const;
};

/// Raised by check_exact_context; `vector_witness` is a kernel vector of R
/// (injectivity), an element of S (+) T (middle exactness) or of M
/// (surjectivity), in the coordinates of that space.
class NotExactError : public Error {
 public:
  NotExactError(ExactnessStage stage, Vector witness, const std::string& message);
  ExactnessStage stage() const noexcept { return stage_; }
  const Vector& vector_witness() const noexcept { return vector_witness_; }

 private:
  ExactnessStage stage_;
  Vector vector_witness_;
};

/// Throws AlgebraMismatch, DimensionMismatch, InvalidBimodule, or
/// NotExactError (code NotExact).
ExactContext check_exact_context(const AlgebraMorphism& lambda, const AlgebraMorphism& mu, const Bimodule& m_bimodule,
                                 const Vector& m);

struct ExactPairVerdict {
  bool holds = false;
  std::size_t tensor_dim = 0;  // dim S (x)_R T
  std::size_t gamma_rank = 0;
  std::size_t m_dim = 0;
  std::size_t coker_tensor_dim = 0;  // dim Coker lambda (x)_R Coker mu
};
/// gamma: S (x)_R T -> M, s (x) t -> s m t, bijective; cross-checked against
/// Coker lambda (x)_R Coker mu = 0 (InternalInconsistency on disagreement).
ExactPairVerdict is_exact_pair(const ExactContext& ctx);

struct RigidityReport {
  ModuleMap morphism;
  bool holds = false;
  std::size_t hom_dim = 0;
  std::size_t span_dim = 0;  // dim End(Y) f + f End(X)
  std::optional<Matrix> witness;  // in Hom(Y, X), outside the span
};
/// Throws AlgebraMismatch, or InvalidArgument when f is not a module map.
RigidityReport is_rigid(const ModuleMap& f);

struct RigidContext {
  ExactContext context;
  EndAlgebra end_y;  // S
  EndAlgebra end_x;  // T
  HomSpace hom;      // M
};
/// R := {(s, t) : s f = f t} inside End(Y) x End(X); throws NotRigid.
RigidContext context_from_rigid(const ModuleMap& f);

struct ExtensionContext {
  ExactContext context;
  Module source;          // S as a left R-module
  QuotientModule quotient;  // S / R
  EndAlgebra s_prime;     // End_R(S / R)
  HomSpace hom;           // Hom_R(S, S / R)
  Matrix pi;              // S -> S / R
};
/// (lambda, lambda', Hom_R(S, S/R), pi), where lambda'(r) is right
/// multiplication by r on S/R. Throws NotInjective, DegenerateQuotient.
ExtensionContext context_from_extension(const AlgebraMorphism& lambda);

/// Morita context (A, C, X, Y, f, g): X is A-C, Y is C-A, f[i][j] = x_i y_j
/// in A and g[j][i] = y_j x_i in C.
struct MoritaData {
  AlgebraPtr a;
  AlgebraPtr c;
  Bimodule x;
  Bimodule y;
  std::vector<std::vector<Vector>> f;
  std::vector<std::vector<Vector>> g;
};

/// Gamma = [[A, X], [Y, C]] with basis A, X, Y, C.
struct MoritaContext {
  ExactContext context;
  MoritaData data;
  AlgebraPtr gamma;
  Subalgebra r;  // diagonal
  Subalgebra s;  // upper
  Subalgebra t;  // lower
  std::size_t offset_x() const { return data.a->dim(); }
  std::size_t offset_y() const { return offset_x() + data.x.dim(); }
  std::size_t offset_c() const { return offset_y() + data.y.dim(); }
};
/// Throws IncompatiblePairings with a basis triple witness.
MoritaContext context_from_morita(const MoritaData& data);

/// An extension R -> S with an ideal complement X of the image.
struct PureExtension {
  AlgebraMorphism inclusion;
  std::vector<Vector> ideal;  // spanning set of X inside S
};

/// M = R (+) X (+) Y with X Y = Y X = 0 and basis R, X, Y.
struct PureContext {
  ExactContext context;
  AlgebraPtr ring;  // M as an algebra
  AlgebraMorphism into_s;  // S -> M
  AlgebraMorphism into_t;  // T -> M
  std::vector<Vector> x_basis;  // in S
  std::vector<Vector> y_basis;  // in T
};
/// Throws NotInjective, NotIdeal, NotBimoduleSplitting, AlgebraMismatch.
PureContext context_from_strictly_pure(const PureExtension& s, const PureExtension& t);

struct MilnorContext {
  ExactContext context;
  ProductAlgebra product;  // Lambda_1 x Lambda_2
  Subalgebra pullback;     // {(a, b) : j1 a = j2 b}
};
/// Context (i1, i2, Lambda', 1) of the pull-back; throws NeitherSurjective.
MilnorContext context_from_milnor(const AlgebraMorphism& j1, const AlgebraMorphism& j2);

struct TauReport {
  std::size_t dim_b = 0;       // dim [[S, S (x)_R S'], [0, S']]
  std::size_t dim_lambda = 0;  // dim End_R(S (+) S/R)
  std::size_t hom_back_dim = 0;  // dim Hom_R(S/R, S)
  std::size_t tau_rank = 0;
  bool hom_back_zero = false;
  bool tau_bijective = false;
  bool ring_epi = false;
  /// Set when ring_epi: hom_back_zero and tau_bijective both hold.
  std::optional<bool> implication_holds;
};
/// tau: B -> End_R(S (+) S/R), (s, sum s_a (x) f_a, f) -> [[.s, sum .s_a pi f_a], [0, f]].
/// Throws InternalInconsistency when tau is not multiplicative.
TauReport tau_comparison(const ExtensionContext& ext);

/// Inclusion between two subalgebras of the same ambient algebra.
AlgebraMorphism inclusion_between(const Subalgebra& small, const Subalgebra& big);

}  // namespace excon
