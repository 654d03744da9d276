#include "doctest.h"

#include <functional>

#include "excon/error.hpp"
#include "excon/exact_context.hpp"
#include "excon/homological.hpp"
#include "excon/linalg.hpp"
#include "support/builders.hpp"

using namespace excon;
using namespace excon::testing;

namespace {

const Field Q = Field::rationals();

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::optional<ExactnessStage> stage_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const NotExactError& e) {
    return e.stage();
  }
  return std::nullopt;
}

/// Invariants every exact context satisfies, each recomputed from scratch.
void check_invariants(const ExactContext& ctx) {
  const std::size_t dr = ctx.r()->dim();
  const std::size_t ds = ctx.s()->dim();
  const std::size_t dt = ctx.t()->dim();
  const std::size_t dm = ctx.bimodule.dim();
  CHECK(dr + dm == ds + dt);
  // M = S m + m T.
  std::vector<Vector> span;
  for (std::size_t i = 0; i < ds; ++i) span.push_back(ctx.bimodule.left_act(ctx.s()->basis_vector(i), ctx.m));
  for (std::size_t j = 0; j < dt; ++j) span.push_back(ctx.bimodule.right_act(ctx.m, ctx.t()->basis_vector(j)));
  CHECK(Subspace(ctx.field(), dm, span).dim() == dm);
  // decompose really writes x as s m + m t.
  for (std::size_t k = 0; k < dm; ++k) {
    const Vector x = unit_vector(ctx.field(), dm, k);
    auto [s, t] = ctx.decompose(x);
    CHECK(add(ctx.bimodule.left_act(s, ctx.m), ctx.bimodule.right_act(ctx.m, t)) == x);
  }
  // gamma bijective iff Coker lambda (x) Coker mu = 0 (checked inside), and a
  // ring epimorphism on either side forces gamma bijective.
  ExactPairVerdict v = is_exact_pair(ctx);
  if (is_ring_epimorphism(ctx.lambda).holds || is_ring_epimorphism(ctx.mu).holds) CHECK(v.holds);
}

}  // namespace

TEST_CASE("identity context is exact and an exact pair") {
  for (AlgebraPtr r : {ground_field_algebra(Q), dual_numbers(Q), matrix_algebra(dual_numbers(Q), 2)}) {
    AlgebraMorphism id = identity_morphism(r);
    ExactContext ctx = check_exact_context(id, id, Bimodule::regular(r), r->unit());
    CHECK(ctx.certificate.rank_difference == r->dim());
    ExactPairVerdict v = is_exact_pair(ctx);
    CHECK(v.holds);
    CHECK(v.coker_tensor_dim == 0);
    check_invariants(ctx);
  }
}

TEST_CASE("exactness failures name their stage and carry a witness") {
  AlgebraPtr k = ground_field_algebra(Q);
  ProductAlgebra kk = product(k, k);

  // R = k x k -> k on both sides forgets the second factor.
  SUBCASE("injectivity") {
    auto st = stage_of([&] { check_exact_context(kk.proj1, kk.proj1, Bimodule::regular(k), k->unit()); });
    CHECK(st == ExactnessStage::Injectivity);
    try {
      check_exact_context(kk.proj1, kk.proj1, Bimodule::regular(k), k->unit());
    } catch (const NotExactError& e) {
      CHECK(e.code() == ErrorCode::NotExact);
      CHECK(is_zero(vec_mat(e.vector_witness(), kk.proj1.matrix())));
      CHECK_FALSE(is_zero(e.vector_witness()));
    }
  }
  // k -> k x k twice, M = k x k: the kernel {(s, s)} is too big.
  SUBCASE("middle exactness") {
    AlgebraMorphism diag(k, kk.algebra, Matrix::from_ints(Q, {{1, 1}}));
    auto st = stage_of([&] { check_exact_context(diag, diag, Bimodule::regular(kk.algebra), kk.algebra->unit()); });
    CHECK(st == ExactnessStage::MiddleExactness);
  }
  // k[x]/(x^2) -> k on both sides with M = k: x dies in S (+) T.
  SUBCASE("augmentation of the dual numbers") {
    AlgebraPtr d = dual_numbers(Q);
    AlgebraMorphism aug(d, k, Matrix::from_ints(Q, {{1}, {0}}));
    auto st = stage_of([&] { check_exact_context(aug, aug, Bimodule::regular(k), k->unit()); });
    CHECK(st == ExactnessStage::Injectivity);
  }
  // Morita data with m = 0 leaves M uncovered.
  SUBCASE("surjectivity") {
    MoritaContext mc = context_from_morita(scalar_morita(Q, 1, 1));
    const ExactContext& c = mc.context;
    try {
      check_exact_context(c.lambda, c.mu, c.bimodule, zero_vector(Q, c.bimodule.dim()));
      FAIL("expected NotExact");
    } catch (const NotExactError& e) {
      CHECK(e.stage() == ExactnessStage::Surjectivity);
      CHECK(e.witness() == std::vector<std::size_t>{2});
    }
  }
}

TEST_CASE("Morita context rings") {
  SUBCASE("canonical pairings give M_2(k)") {
    MoritaContext mc = context_from_morita(scalar_morita(Q, 1, 1));
    CHECK(same_structure(*mc.gamma, *matrix_algebra(ground_field_algebra(Q), 2)));
    CHECK(mc.context.certificate.dim_r == 2);
    CHECK(mc.context.certificate.dim_m == 4);
    check_invariants(mc.context);
  }
  SUBCASE("zero pairings give the radical-square-zero two-cycle") {
    MoritaContext mc = context_from_morita(scalar_morita(Q, 0, 0));
    const Algebra& g = *mc.gamma;
    CHECK(g.dim() == 4);
    CHECK(g.product(1, 2).empty());  // x y = 0
    CHECK(g.product(2, 1).empty());  // y x = 0
    CHECK_FALSE(g.is_commutative());
    // Same dimension and radical as the quiver algebra with both relations.
    QuiverAlgebra q = two_cycle(Q, true);
    CHECK(q.algebra->dim() == 4);
    CHECK(radical(g).size() == radical(*q.algebra).size());
    check_invariants(mc.context);
  }
  SUBCASE("incompatible pairings") {
    CHECK(code_of([] { context_from_morita(scalar_morita(Q, 1, 2)); }) == ErrorCode::IncompatiblePairings);
    CHECK(code_of([] { context_from_morita(scalar_morita(Q, 1, 0)); }) == ErrorCode::IncompatiblePairings);
  }
}

TEST_CASE("rigidity") {
  AlgebraPtr d = dual_numbers(Q);
  Module reg = Module::regular(d, Side::Left);
  SUBCASE("right multiplication by x is not rigid") {
    ModuleMap f{reg, reg, d->right_mult_basis(1)};
    RigidityReport rep = is_rigid(f);
    CHECK_FALSE(rep.holds);
    CHECK(rep.hom_dim == 2);
    CHECK(rep.span_dim == 1);
    REQUIRE(rep.witness.has_value());
    CHECK(*rep.witness == Matrix::identity(Q, 2));
    CHECK(code_of([&] { context_from_rigid(f); }) == ErrorCode::NotRigid);
  }
  SUBCASE("isomorphisms are rigid") {
    ModuleMap f{reg, reg, d->right_mult_matrix(ints(Q, {2, 1}))};
    CHECK(is_rigid(f).holds);
    RigidContext rc = context_from_rigid(f);
    CHECK(rc.context.r()->dim() == rc.end_y.algebra->dim());
    check_invariants(rc.context);
  }
  SUBCASE("identity gives the diagonal") {
    Module x = Module::regular(matrix_algebra(d, 2), Side::Right);
    ModuleMap f{x, x, Matrix::identity(Q, x.dim())};
    RigidContext rc = context_from_rigid(f);
    CHECK(rc.context.r()->dim() == 8);
    check_invariants(rc.context);
  }
  SUBCASE("map that is not a homomorphism") {
    Matrix bad = Matrix::from_ints(Q, {{0, 1}, {0, 0}});
    CHECK(code_of([&] { is_rigid(ModuleMap{reg, reg, bad}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("extension of k by the dual numbers") {
  AlgebraPtr k = ground_field_algebra(Q);
  AlgebraPtr d = dual_numbers(Q);
  AlgebraMorphism lambda(k, d, Matrix::from_ints(Q, {{1, 0}}));
  ExtensionContext ext = context_from_extension(lambda);
  const ExactnessCertificate& c = ext.context.certificate;
  CHECK(c.dim_r == 1);
  CHECK(c.dim_s == 2);
  CHECK(c.dim_t == 1);
  CHECK(c.dim_m == 2);
  // lambda' is an isomorphism k -> End(S/R), so Coker mu = 0.
  ExactPairVerdict v = is_exact_pair(ext.context);
  CHECK(v.holds);
  CHECK(v.coker_tensor_dim == 0);
  check_invariants(ext.context);

  // The projection onto S/R is rigid and induces a different context with
  // the same M.
  RigidityReport rep = is_rigid(ModuleMap{ext.source, ext.quotient.module, ext.pi});
  CHECK(rep.holds);
  RigidContext rc = context_from_rigid(rep.morphism);
  CHECK(rc.context.bimodule.dim() == ext.context.bimodule.dim());
  CHECK(rc.context.s()->dim() == 4);
  check_invariants(rc.context);

  TauReport tau = tau_comparison(ext);
  CHECK_FALSE(tau.ring_epi);
  CHECK_FALSE(tau.implication_holds.has_value());
  CHECK(tau.dim_b == 2 + 2 + 1);
  CHECK(tau.dim_lambda == 4 + 2 + tau.hom_back_dim + 1);
}

TEST_CASE("extension constructor errors") {
  AlgebraPtr d = dual_numbers(Q);
  AlgebraPtr k = ground_field_algebra(Q);
  CHECK(code_of([&] { context_from_extension(identity_morphism(d)); }) == ErrorCode::DegenerateQuotient);
  AlgebraMorphism aug(d, k, Matrix::from_ints(Q, {{1}, {0}}));
  CHECK(code_of([&] { context_from_extension(aug); }) == ErrorCode::NotInjective);
}

TEST_CASE("tau is an isomorphism for an injective ring epimorphism") {
  ExtensionContext ext = context_from_extension(upper_triangular_into_m2(Q));
  check_invariants(ext.context);
  TauReport tau = tau_comparison(ext);
  CHECK(tau.ring_epi);
  CHECK(tau.hom_back_zero);
  CHECK(tau.tau_bijective);
  CHECK(tau.implication_holds == true);
}

TEST_CASE("extension by the lower-triangular subring of M_3 over the dual numbers") {
  AlgebraPtr s = matrix_algebra(dual_numbers(Q), 3);
  Subalgebra r = lower_triangular_in_m3(s);
  ExtensionContext ext = context_from_extension(r.inclusion);
  CHECK(ext.context.certificate.dim_r == 9);
  CHECK(ext.context.certificate.dim_s == 18);
  check_invariants(ext.context);
}

TEST_CASE("strictly pure extensions") {
  QuiverAlgebra a = two_cycle(Q, false);
  Subalgebra r = span_of_labels(a.algebra, {"e1", "e2"});
  Subalgebra s = span_of_labels(a.algebra, {"e1", "e2", "a"});
  Subalgebra t = span_of_labels(a.algebra, {"e1", "e2", "b"});
  PureExtension sx{inclusion_between(r, s), {s.algebra->basis_vector(2)}};
  PureExtension ty{inclusion_between(r, t), {t.algebra->basis_vector(2)}};

  SUBCASE("radicals of a trivially twisted tensor product") {
    PureContext pc = context_from_strictly_pure(sx, ty);
    CHECK(pc.ring->dim() == 4);
    // x y = y x = 0 in M.
    CHECK(pc.ring->product(2, 3).empty());
    CHECK(pc.ring->product(3, 2).empty());
    CHECK(pc.context.m == pc.ring->unit());
    check_invariants(pc.context);
  }
  SUBCASE("zero complements give M = R") {
    AlgebraPtr rr = r.algebra;
    PureExtension triv{identity_morphism(rr), {}};
    PureContext pc = context_from_strictly_pure(triv, triv);
    CHECK(same_structure(*pc.ring, *rr));
    check_invariants(pc.context);
  }
  SUBCASE("complement that is not an ideal") {
    PureExtension bad{sx.inclusion, {s.algebra->basis_vector(0)}};
    CHECK(code_of([&] { context_from_strictly_pure(bad, ty); }) == ErrorCode::NotIdeal);
  }
  SUBCASE("complement that does not split") {
    PureExtension bad{sx.inclusion, {}};
    CHECK(code_of([&] { context_from_strictly_pure(bad, ty); }) == ErrorCode::NotBimoduleSplitting);
  }
}

TEST_CASE("Milnor squares") {
  AlgebraPtr k = ground_field_algebra(Q);
  AlgebraPtr d = dual_numbers(Q);
  SUBCASE("identity square") {
    MilnorContext mc = context_from_milnor(identity_morphism(d), identity_morphism(d));
    CHECK(mc.pullback.algebra->dim() == 2);
    check_invariants(mc.context);
  }
  SUBCASE("augmentation against the identity of k") {
    AlgebraMorphism aug(d, k, Matrix::from_ints(Q, {{1}, {0}}));
    MilnorContext mc = context_from_milnor(aug, identity_morphism(k));
    CHECK(mc.pullback.algebra->dim() == 2);
    CHECK(is_exact_pair(mc.context).holds);
    check_invariants(mc.context);
  }
  SUBCASE("neither map surjective") {
    ProductAlgebra kk = product(k, k);
    AlgebraMorphism diag(k, kk.algebra, Matrix::from_ints(Q, {{1, 1}}));
    CHECK(code_of([&] { context_from_milnor(diag, diag); }) == ErrorCode::NeitherSurjective);
  }
}
