#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "excon/algebra.hpp"
#include "excon/module.hpp"

namespace excon {

/// Jacobson radical from the trace form x, y -> tr(L_{xy}). Valid in
/// characteristic 0 or p > dim; throws CharacteristicTooSmall otherwise.
std::vector<Vector> radical(const Algebra& a);

/// Complete set of primitive orthogonal idempotents, lifted from a / rad.
struct IdempotentData {
  std::vector<Vector> radical;          // RREF basis
  std::vector<Vector> primitive;        // e_1 + ... + e_r = 1
  std::vector<std::size_t> class_of;    // isomorphism class of e_i a
  std::vector<std::size_t> representatives;  // one index into primitive per class
};

/// Cached per algebra. nullopt when a / rad is not split over the field (a
/// corner of dimension > 1 without zero divisors was found), or the
/// characteristic is too small for the radical.
std::shared_ptr<const IdempotentData> primitive_idempotents(const AlgebraPtr& a);

enum class ResolutionKind { Free, MinimalProjective };

/// P_n -> ... -> P_0 -> x -> 0. Term i is the direct sum over j of e_ij A
/// (right modules) or A e_ij (left modules); free terms use e_ij = 1. Elements
/// of term i are stored in the coordinates of A^{n_i}, copy j occupying
/// [j * dim A, (j + 1) * dim A).
struct Resolution {
  Module module;
  ResolutionKind kind = ResolutionKind::Free;
  std::vector<std::vector<Vector>> idempotents;  // [i][j] = e_ij
  /// [0][j] is the image of the j-th generator in x; [i][j] for i >= 1 lies in
  /// A^{n_{i-1}}.
  std::vector<std::vector<Vector>> images;
  /// dim of the kernel of P_i -> P_{i-1} (of P_0 -> x for i = 0).
  std::vector<std::size_t> syzygy_dims;
  /// Some kernel vanished: the resolution is complete and length() is exact.
  bool terminated = false;

  std::size_t terms() const { return idempotents.size(); }
  std::size_t rank(std::size_t i) const { return idempotents.at(i).size(); }
  std::size_t length() const { return terms() == 0 ? 0 : terms() - 1; }
  /// dim of term i as a vector space.
  std::size_t term_dim(std::size_t i) const;
  /// Matrix of P_i -> P_{i-1} (of P_0 -> x for i = 0) on the ambient
  /// A^{n_i}; rows outside the term are zero-free but meaningless.
  Matrix differential(std::size_t i) const;
  /// Basis of term i inside A^{n_i}.
  std::vector<Vector> term_basis(std::size_t i) const;
};

/// Resolution by free modules with greedy generators; computes P_0 .. P_length.
Resolution free_resolution(const Module& x, std::size_t length);
/// Projective covers from the primitive idempotents; generators lift a basis
/// of the top x / x rad. Falls back to free terms with top-lifted generators
/// (kind stays Free) when idempotents are unavailable. Throws
/// CharacteristicTooSmall when the radical cannot be computed.
Resolution minimal_resolution(const Module& x, std::size_t length);

struct TorResult {
  std::vector<std::size_t> dims;  // degrees 0 .. max_degree
  std::size_t max_degree = 0;
  /// The resolution terminated: Tor vanishes above its length.
  bool certified = false;
  std::optional<std::size_t> vanishes_above;
  std::size_t at(std::size_t i) const;
};

/// Tor_i(t, s) for a right module t and a left module s over the same algebra.
TorResult tor(const Module& t, const Module& s, std::size_t max_degree);
/// Tor in windows of degrees 1, 2, 4, ... up to max_degree, stopping after
/// the first window with a nonzero group in positive degree; `max_degree` of
/// the result is the last degree computed.
TorResult tor_until_nonzero(const Module& t, const Module& s, std::size_t max_degree);
/// Tor from a given resolution of one side, tensored with the other module.
TorResult tor_from_resolution(const Resolution& res, const Module& other, std::size_t max_degree);
/// dim (t (x)_A s), from a presentation of t.
std::size_t tensor_dimension(const Module& t, const Module& s);

struct RingEpiVerdict {
  bool holds = false;
  std::size_t tensor_dim = 0;  // dim S (x)_R S
  std::size_t target_dim = 0;
};
/// f: R -> S is a ring epimorphism iff S (x)_R S -> S is bijective, i.e. the
/// tensor square has dimension dim S (multiplication is always onto).
RingEpiVerdict is_ring_epimorphism(const AlgebraMorphism& f);

struct HomologicalVerdict {
  bool holds = false;
  bool ring_epi = false;
  /// Vanishing is certified in all degrees by a finite resolution.
  bool unconditional = false;
  std::size_t bound = 0;
  std::optional<std::size_t> failing_degree;
  std::vector<std::size_t> tor_dims;  // Tor_i^R(S, S), from i = 0 up to the failing window or bound
};
/// Ring epimorphism with Tor_i^R(S_R, _R S) = 0 for 1 <= i <= bound.
HomologicalVerdict is_homological_up_to(const AlgebraMorphism& f, std::size_t bound);

struct ProjectiveDimension {
  std::optional<std::size_t> value;  // nullopt: at least bound + 1
  std::size_t bound = 0;
  bool zero_module = false;
  std::string to_string() const;
  bool operator==(const ProjectiveDimension&) const = default;
};
ProjectiveDimension projective_dimension(const Module& x, std::size_t bound);
/// pd from dim Tor_i(x, a / rad), computed by resolving a / rad rather than
/// x: pd is the largest i with a nonzero group.
ProjectiveDimension projective_dimension_via_simples(const Module& x, std::size_t bound);

}  // namespace excon
