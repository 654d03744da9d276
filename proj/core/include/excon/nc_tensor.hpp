#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excon/algebra.hpp"
#include "excon/constructions.hpp"
#include "excon/exact_context.hpp"
#include "excon/homological.hpp"
#include "excon/module.hpp"

namespace excon {

/// T (x)_R S with the product (t1 (x) s1)(t2 (x) s2) = t1 delta(s1 (x) t2) s2.
/// The basis is the quotient basis of `tensor`: every basis element is the
/// class of a pure tensor t_a (x) s_b.
struct NcTensorRing {
  ExactContext context;
  TensorBimodule tensor;  // T-S-bimodule
  AlgebraPtr algebra;
  AlgebraMorphism rho;  // S -> ring, s -> 1 (x) s
  AlgebraMorphism phi;  // T -> ring, t -> t (x) 1
  Matrix beta;          // dim M x dim ring
  /// Row b * dim T + c is delta(s_b (x) t_c) = beta(s_b m t_c).
  Matrix delta;

  std::size_t dim() const { return algebra->dim(); }
  /// Product of two elements of T (x)_k S given in ambient coordinates
  /// (index a * dim S + b), projected to the ring.
  Vector multiply_ambient(const Vector& u, const Vector& w) const;
};

/// beta(x) = class(1 (x) s_x) + class(t_x (x) 1) for x = s_x m + m t_x, on
/// the quotient basis of tensor_over(T_R, _R S). Independence of the chosen
/// (s_x, t_x) is re-verified; failures raise InternalInconsistency.
Matrix build_beta(const ExactContext& ctx);

/// Throws InternalInconsistency when a ring axiom, a morphism law for rho or
/// phi, or the bimodule law for beta fails.
NcTensorRing build_nc_tensor(const ExactContext& ctx);

/// Recomputes every basis product from perturbed representatives (each lift
/// shifted by a relation of the tensor product) and compares.
bool section_perturbation_check(const NcTensorRing& ring);

/// A closed-form algebra in block coordinates, with the collapse onto the
/// ring it was built from and the block inclusion beta back.
struct BlockOracle {
  AlgebraPtr algebra;
  TensorProduct w;  // the extra Y (x) X block
  std::size_t offset_w = 0;
  Matrix collapse;  // algebra -> base ring
  Matrix beta;      // base ring -> algebra
};

/// [[A, X], [Y, C (+) Y (x)_A X]] with basis A, X, Y, C, Y (x) X.
BlockOracle nc_tensor_morita_oracle(const MoritaData& data);
/// R (+) X (+) Y (+) Y (x)_R X with basis R, X, Y, Y (x) X.
BlockOracle nc_tensor_pure_oracle(const PureContext& pure);

struct CollapseReport {
  bool morphism = false;        // collapse is a ring homomorphism
  bool section = false;         // beta then collapse is the identity
  bool beta_multiplicative = false;
  bool w_zero = false;          // the Y (x) X block vanishes
};
/// `base` is the ring the oracle collapses onto (Gamma, or the pure M).
CollapseReport verify_collapse(const BlockOracle& oracle, const AlgebraPtr& base);

/// Canonical identification t (x) s -> t s of the ring with an oracle, where
/// t and s are embedded blockwise.
Matrix morita_identification(const MoritaContext& mc, const NcTensorRing& ring, const BlockOracle& oracle);
Matrix pure_identification(const PureContext& pc, const NcTensorRing& ring, const BlockOracle& oracle);

struct OracleComparison {
  bool bijective = false;
  bool structure_equal = false;
  std::optional<std::pair<std::size_t, std::size_t>> first_difference;
};
/// psi: ring -> target is bijective, unital and multiplicative on all basis
/// pairs, i.e. the structure constants agree after transport.
OracleComparison compare_structure(const AlgebraPtr& ring, const AlgebraPtr& target, const Matrix& psi);

/// B = [[S, M], [0, T]] -> C = M_2(ring), (s, x, t) -> [[rho s, beta x], [0, phi t]].
struct ThetaData {
  NcTensorRing ring;
  TriangularAlgebra b;
  AlgebraPtr c;
  AlgebraMorphism theta;
  Vector e1;
  Vector e2;
  Vector carrier;  // (0, m, 0) in B
  /// B e1 -> B e2, s -> s m: dim S x (dim M + dim T) in the bases of the
  /// S-block and of the M, T blocks.
  Matrix phi_b;
};
ThetaData build_theta(const NcTensorRing& ring);

struct LocalizationReport {
  RingEpiVerdict epi;
  std::vector<std::size_t> tor_dims;  // Tor_i^B(C, C), i = 0 .. bound
  bool tor1_vanishes = false;
  bool sigma_inverting = false;
  std::size_t sigma_source_dim = 0;
  std::size_t sigma_target_dim = 0;
  std::size_t sigma_rank = 0;
  bool sheiham = false;
  std::string sheiham_failure;
  bool all() const { return epi.holds && tor1_vanishes && sigma_inverting && sheiham; }
};
LocalizationReport verify_localization_properties(const ThetaData& td, std::size_t tor_bound);

struct Theorem1Verdict {
  bool holds = false;  // Tor_i^R(T, S) = 0 for 1 <= i <= bound
  std::size_t bound = 0;
  std::optional<std::size_t> failing_degree;
  std::size_t failing_dim = 0;
  std::vector<std::size_t> tor_dims;  // Tor_i^R(T, S), from i = 0 up to the failing window or bound
  HomologicalVerdict theta;
};
/// Compares the Tor criterion with is_homological_up_to(theta, bound); throws
/// InternalInconsistency when they disagree.
Theorem1Verdict theorem1_criterion(const ThetaData& td, std::size_t bound);
Theorem1Verdict theorem1_criterion(const ExactContext& ctx, std::size_t bound);

struct CoincidenceReport {
  bool equal = false;
  std::optional<std::pair<std::size_t, std::size_t>> first_difference;
};
/// Compares the ring with (t (x) s)(t' (x) s') = t t' (x) s s'. Throws
/// PreconditionFailed unless R is commutative, lambda and mu land in the
/// centres and the pair is exact.
CoincidenceReport commutative_coincidence_check(const NcTensorRing& ring);

struct PdReport {
  ProjectiveDimension pd_rs;  // S as a left R-module
  ProjectiveDimension pd_bc;  // C as a left B-module
  ProjectiveDimension pd_tr;  // T as a right R-module
  ProjectiveDimension pd_cb;  // C as a right B-module
  bool left_ok = false;   // pd_rs <= max(1, pd_bc), pd_bc <= max(2, pd_rs + 1)
  bool right_ok = false;  // the same for pd_tr, pd_cb
};
/// Throws PreconditionFailed when Tor_i^R(T, S) != 0 for some i <= bound and
/// Inconclusive when a projective dimension exceeds the bound.
PdReport pd_inequality_check(const ThetaData& td, std::size_t bound);

struct EndTReport {
  bool ring_epi = false;  // lambda
  std::size_t end_dim = 0;
  bool isomorphic = false;  // z -> (q -> q z) identifies the ring with End_T(T (x)_R S)
};
/// Throws InternalInconsistency when lambda is a ring epimorphism but the
/// map is not bijective.
EndTReport end_t_check(const NcTensorRing& ring);

}  // namespace excon
