#include "doctest.h"

#include "excon/error.hpp"
#include "support/builders.hpp"

using namespace excon;
using namespace excon::testing;

namespace {
const Field Q = Field::rationals();
}

TEST_CASE("make_algebra: the field itself") {
  AlgebraPtr k = Algebra::make(Q, {"1"}, {{Vector{Q.one()}}}, {Q.one()});
  CHECK(k->dim() == 1);
  CHECK(k->is_commutative());
}

TEST_CASE("make_algebra: dual numbers are valid") {
  AlgebraPtr a = dual_numbers(Q);
  CHECK(a->dim() == 2);
  CHECK_FALSE(a->find_axiom_failure().has_value());
}

TEST_CASE("make_algebra: wrong unit is rejected") {
  std::vector<std::vector<Vector>> m(2, std::vector<Vector>(2));
  m[0][0] = ints(Q, {1, 0});
  m[0][1] = ints(Q, {0, 1});
  m[1][0] = ints(Q, {0, 1});
  m[1][1] = ints(Q, {1, 0});
  try {
    Algebra::make(Q, {"1", "x"}, m, ints(Q, {0, 1}));
    FAIL("expected BadUnit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadUnit);
  }
}

TEST_CASE("make_algebra: non-associative table is rejected with a witness") {
  // x*y = x with y*y = 0 breaks (x*y)*y = x*(y*y).
  std::vector<std::vector<Vector>> t(3, std::vector<Vector>(3, ints(Q, {0, 0, 0})));
  for (int i = 0; i < 3; ++i) {
    t[0][i] = unit_vector(Q, 3, i);
    t[i][0] = unit_vector(Q, 3, i);
  }
  t[1][2] = ints(Q, {0, 1, 0});
  try {
    Algebra::make(Q, {}, t, ints(Q, {1, 0, 0}));
    FAIL("expected NonAssociative");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonAssociative);
    CHECK(e.witness().size() == 3);
  }
}

TEST_CASE("matrix_algebra examples") {
  AlgebraPtr a = dual_numbers(Q);
  AlgebraPtr m1 = matrix_algebra(a, 1);
  CHECK(same_structure(*m1, *a));
  AlgebraPtr k = ground_field_algebra(Q);
  AlgebraPtr m2 = matrix_algebra(k, 2);
  CHECK(m2->dim() == 4);
  Vector e12 = m2->basis_vector(*m2->index_of("E12.1"));
  Vector e21 = m2->basis_vector(*m2->index_of("E21.1"));
  CHECK(m2->multiply(e12, e21) == m2->basis_vector(*m2->index_of("E11.1")));
  AlgebraPtr m3 = matrix_algebra(a, 3);
  CHECK(m3->dim() == 18);
  // Exhaustive axiom check of the inherited structure.
  CHECK_FALSE(m3->find_axiom_failure().has_value());
}

TEST_CASE("subalgebra_from_spanning examples") {
  AlgebraPtr a = dual_numbers(Q);
  Subalgebra full = subalgebra_from_spanning(a, {a->basis_vector(0), a->basis_vector(1)});
  CHECK(same_structure(*full.algebra, *a));

  AlgebraPtr m2 = matrix_algebra(ground_field_algebra(Q), 2);
  Subalgebra up = subalgebra_from_spanning(m2, {m2->basis_vector(0), m2->basis_vector(1), m2->basis_vector(3)});
  CHECK(up.algebra->dim() == 3);
  CHECK(check_morphism(up.inclusion).ok);

  AlgebraPtr s = matrix_algebra(a, 3);
  Subalgebra r = lower_triangular_in_m3(s);
  CHECK(r.algebra->dim() == 9);
  CHECK(check_morphism(r.inclusion).ok);
  CHECK_FALSE(r.algebra->find_axiom_failure().has_value());
}

TEST_CASE("subalgebra_from_spanning errors") {
  AlgebraPtr m2 = matrix_algebra(ground_field_algebra(Q), 2);
  try {
    subalgebra_from_spanning(m2, {m2->unit(), m2->basis_vector(1), m2->basis_vector(2)});
    FAIL("expected NotClosed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotClosed);
    CHECK(e.witness().size() == 2);
  }
  try {
    subalgebra_from_spanning(m2, {m2->basis_vector(0)});
    FAIL("expected UnitMissing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnitMissing);
  }
}

TEST_CASE("opposite and product") {
  AlgebraPtr a = dual_numbers(Q);
  CHECK(same_structure(*opposite(a), *a));
  AlgebraPtr m2 = matrix_algebra(ground_field_algebra(Q), 2);
  CHECK_FALSE(same_structure(*opposite(m2), *m2));
  CHECK(same_structure(*opposite(opposite(m2)), *m2));
  ProductAlgebra kk = product(ground_field_algebra(Q), ground_field_algebra(Q));
  CHECK(kk.algebra->dim() == 2);
  CHECK(kk.algebra->is_commutative());
  CHECK_FALSE(kk.algebra->find_axiom_failure().has_value());
  CHECK(check_morphism(kk.proj1).ok);
  CHECK(check_morphism(kk.proj2).ok);
}

TEST_CASE("check_morphism examples") {
  AlgebraPtr a = dual_numbers(Q);
  CHECK(check_morphism(identity_morphism(a)).ok);
  MorphismReport z = check_morphism(a, a, Matrix(Q, 2, 2));
  CHECK_FALSE(z.ok);
  CHECK(z.failure == "unit");
  // x -> 1 preserves the unit but not the product.
  MorphismReport m = check_morphism(a, a, Matrix::from_ints(Q, {{1, 0}, {1, 0}}));
  CHECK_FALSE(m.ok);
  CHECK(m.failure == "multiplicativity");
}

TEST_CASE("algebra generators generate") {
  AlgebraPtr s = matrix_algebra(dual_numbers(Q), 3);
  auto gens = algebra_generators(*s);
  CHECK(gens.size() < s->dim());
  // Closure of the generators under products spans everything.
  std::vector<Vector> vs{s->unit()};
  for (auto g : gens) vs.push_back(s->basis_vector(g));
  EchelonBasis span(Q, s->dim());
  std::vector<Vector> words;
  for (auto& v : vs) if (span.insert(v)) words.push_back(v);
  for (std::size_t w = 0; w < words.size(); ++w) {
    for (auto g : gens) {
      Vector p = s->multiply(words[w], s->basis_vector(g));
      if (span.insert(p)) words.push_back(p);
    }
  }
  CHECK(span.rank() == s->dim());
}

TEST_CASE("transport preserves structure") {
  AlgebraPtr a = dual_numbers(Q);
  Matrix basis = Matrix::from_ints(Q, {{1, 1}, {0, 2}});
  AlgebraPtr b = transport(a, basis);
  CHECK_FALSE(b->find_axiom_failure().has_value());
  CHECK(b->unit() == Vector{Q.one(), Q.from_rational(mpq_class(-1, 2))});
}
