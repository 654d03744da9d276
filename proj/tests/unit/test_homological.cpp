#include "doctest.h"

#include "excon/error.hpp"
#include "excon/homological.hpp"
#include "support/builders.hpp"

using namespace excon;
using namespace excon::testing;

namespace {

const Field Q = Field::rationals();
const Field F101 = Field::prime(101);

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

/// Resolution sanity: consecutive differentials compose to zero and each
/// term splits as rank(d_i) + dim ker(d_i).
void check_resolution(const Resolution& res) {
  const Field& f = res.module.field();
  for (std::size_t i = 0; i < res.terms(); ++i) {
    std::vector<Vector> basis = res.term_basis(i);
    Matrix di = res.differential(i);
    std::vector<Vector> images;
    for (const auto& v : basis) images.push_back(vec_mat(v, di));
    const std::size_t cols = i == 0 ? res.module.dim() : res.rank(i - 1) * res.module.algebra()->dim();
    const std::size_t r = rank(Matrix::from_rows(f, images, cols));
    CHECK(basis.size() == res.term_dim(i));
    CHECK(res.term_dim(i) == r + res.syzygy_dims[i]);
    if (i == 0) CHECK(r == res.module.dim());  // P_0 covers
    if (i + 1 < res.terms()) {
      CHECK(rank(Matrix::from_rows(f, [&] {
                   std::vector<Vector> imgs;
                   for (const auto& v : res.term_basis(i + 1)) imgs.push_back(vec_mat(v, res.differential(i + 1)));
                   return imgs;
                 }(), res.rank(i) * res.module.algebra()->dim())) == res.syzygy_dims[i]);
      // d_{i+1} then d_i is zero.
      for (const auto& v : res.term_basis(i + 1)) CHECK(is_zero(vec_mat(vec_mat(v, res.differential(i + 1)), di)));
    }
  }
}

/// Minimality witness: every component of every differential image lies in
/// the radical.
bool differentials_in_radical(const Resolution& res) {
  const Algebra& a = *res.module.algebra();
  Subspace rad(a.field(), a.dim(), radical(a));
  for (std::size_t i = 1; i < res.terms(); ++i) {
    for (const auto& g : res.images[i]) {
      for (std::size_t c = 0; c < res.rank(i - 1); ++c) {
        Vector part(g.begin() + static_cast<long>(c * a.dim()), g.begin() + static_cast<long>((c + 1) * a.dim()));
        if (!rad.contains(part)) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("radical examples") {
  CHECK(radical(*ground_field_algebra(Q)).empty());
  CHECK(radical(*dual_numbers(Q)) == std::vector<Vector>{ints(Q, {0, 1})});
  CHECK(radical(*matrix_algebra(ground_field_algebra(Q), 2)).empty());
  CHECK(radical(*product(ground_field_algebra(Q), ground_field_algebra(Q)).algebra).empty());
  // Upper-triangular 2x2: radical is spanned by the off-diagonal unit.
  TriangularAlgebra tri = triangular_algebra(Bimodule::regular(ground_field_algebra(Q)));
  CHECK(radical(*tri.algebra) == std::vector<Vector>{ints(Q, {0, 1, 0})});
  // M_2(k[x]/(x^2)): x times all matrix units.
  CHECK(radical(*matrix_algebra(dual_numbers(Q), 2)).size() == 4);
  CHECK(code_of([] { radical(*dual_numbers(Field::prime(2))); }) == ErrorCode::CharacteristicTooSmall);
  CHECK(radical(*dual_numbers(Field::prime(3))).size() == 1);
}

TEST_CASE("radical is a nilpotent ideal with semisimple quotient") {
  AlgebraPtr s = matrix_algebra(dual_numbers(Q), 3);
  Subalgebra r = lower_triangular_in_m3(s);
  for (const AlgebraPtr& a : {r.algebra, linear_quiver(Q, 4, true).algebra, linear_quiver(F101, 3, false).algebra}) {
    std::vector<Vector> rad = radical(*a);
    QuotientAlgebra q = quotient_algebra(a, rad);
    CHECK(radical(*q.algebra).empty());
    // rad^n = 0 for n = dim.
    std::vector<Vector> power = rad;
    for (std::size_t n = 1; n < a->dim() && !power.empty(); ++n) {
      std::vector<Vector> next;
      for (const auto& p : power) {
        for (const auto& x : rad) next.push_back(a->multiply(p, x));
      }
      power = Subspace(a->field(), a->dim(), next).basis();
    }
    CHECK(power.empty());
  }
}

TEST_CASE("primitive idempotents") {
  auto check = [](const AlgebraPtr& a, std::size_t count, std::size_t classes) {
    auto data = primitive_idempotents(a);
    REQUIRE(data != nullptr);
    CHECK(data->primitive.size() == count);
    CHECK(data->representatives.size() == classes);
    Vector sum = a->zero();
    for (std::size_t i = 0; i < count; ++i) {
      const Vector& e = data->primitive[i];
      sum = add(sum, e);
      for (std::size_t j = 0; j < count; ++j) {
        Vector prod = a->multiply(e, data->primitive[j]);
        CHECK(prod == (i == j ? e : a->zero()));
      }
      // Primitive: e a e / e rad e is one-dimensional (split case).
      Matrix ere = a->left_mult_matrix(e) * a->right_mult_matrix(e);
      Subspace corner(a->field(), a->dim(), ere.row_list());
      std::vector<Vector> rad_corner;
      for (const auto& r : data->radical) rad_corner.push_back(a->multiply(a->multiply(e, r), e));
      CHECK(corner.dim() - Subspace(a->field(), a->dim(), rad_corner).dim() == 1);
    }
    CHECK(sum == a->unit());
  };
  check(ground_field_algebra(Q), 1, 1);
  check(matrix_algebra(ground_field_algebra(Q), 3), 3, 1);
  check(matrix_algebra(dual_numbers(F101), 2), 2, 1);
  check(linear_quiver(Q, 3, true).algebra, 3, 3);
  check(lower_triangular_in_m3(matrix_algebra(dual_numbers(Q), 3)).algebra, 3, 3);
  check(triangular_algebra(Bimodule::regular(matrix_algebra(ground_field_algebra(Q), 2))).algebra, 4, 2);
}

TEST_CASE("Tor over the ground field") {
  AlgebraPtr k = ground_field_algebra(Q);
  Module right = Module::regular(k, Side::Right);
  Module left = Module::regular(k, Side::Left);
  TorResult t = tor(right, left, 3);
  CHECK(t.dims == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(t.certified);
  CHECK(*t.vanishes_above == 0);
}

TEST_CASE("k over k[x]/(x^2) has periodic minimal resolution") {
  AlgebraPtr d = dual_numbers(Q);
  Module k_right = one_dim_module(d, Side::Right, 0);
  Module k_left = one_dim_module(d, Side::Left, 0);
  Resolution res = minimal_resolution(k_right, 6);
  CHECK(res.kind == ResolutionKind::MinimalProjective);
  CHECK_FALSE(res.terminated);
  for (std::size_t i = 0; i <= 6; ++i) {
    CHECK(res.rank(i) == 1);
    CHECK(res.syzygy_dims[i] == 1);
  }
  check_resolution(res);
  CHECK(differentials_in_radical(res));
  TorResult t = tor(k_right, k_left, 5);
  CHECK(t.dims == std::vector<std::size_t>{1, 1, 1, 1, 1, 1});
  CHECK_FALSE(t.certified);
  ProjectiveDimension pd = projective_dimension(k_right, 10);
  CHECK_FALSE(pd.value.has_value());
  CHECK(pd.to_string() == ">= 11");
}

TEST_CASE("projective dimensions of simples over linear quivers") {
  // Path algebra 1 -> 2: hereditary, the simple at the source has pd 1.
  QuiverAlgebra a2 = linear_quiver(Q, 2, false);
  CHECK(*projective_dimension(one_dim_module(a2.algebra, Side::Right, a2.vertex_basis[0]), 8).value == 1);
  CHECK(*projective_dimension(one_dim_module(a2.algebra, Side::Right, a2.vertex_basis[1]), 8).value == 0);
  // 1 -> 2 -> 3 with ab = 0: pd of the simples is 2, 1, 0.
  QuiverAlgebra a3 = linear_quiver(Q, 3, true);
  for (std::size_t v = 0; v < 3; ++v) {
    Module s = one_dim_module(a3.algebra, Side::Right, a3.vertex_basis[v]);
    ProjectiveDimension pd = projective_dimension(s, 8);
    REQUIRE(pd.value.has_value());
    CHECK(*pd.value == 2 - v);
    CHECK(projective_dimension_via_simples(s, 8) == pd);
    Resolution res = minimal_resolution(s, 8);
    CHECK(res.terminated);
    check_resolution(res);
    CHECK(differentials_in_radical(res));
  }
  // Left simples: the arrows reverse, so the order flips.
  for (std::size_t v = 0; v < 3; ++v) {
    Module s = one_dim_module(a3.algebra, Side::Left, a3.vertex_basis[v]);
    CHECK(*projective_dimension(s, 8).value == v);
    CHECK(projective_dimension_via_simples(s, 8) == projective_dimension(s, 8));
  }
}

TEST_CASE("free and minimal resolutions give the same Tor") {
  QuiverAlgebra a3 = linear_quiver(F101, 4, true);
  Module right = Module::regular(a3.algebra, Side::Right);
  for (std::size_t v = 0; v < 4; ++v) {
    Module s = one_dim_module(a3.algebra, Side::Right, a3.vertex_basis[v]);
    Resolution free_res = free_resolution(s, 2);
    for (std::size_t w = 0; w < 4; ++w) {
      Module l = one_dim_module(a3.algebra, Side::Left, a3.vertex_basis[w]);
      TorResult minimal = tor(s, l, 4);
      TorResult free = tor_from_resolution(free_res, l, 1);
      CHECK(std::vector<std::size_t>(minimal.dims.begin(), minimal.dims.begin() + 2) == free.dims);
      // Balanced: resolving the left module instead.
      CHECK(tor_from_resolution(minimal_resolution(l, 5), s, 4).dims == minimal.dims);
      CHECK(minimal.dims[0] == tensor_over(s, l).dim());
    }
  }
  check_resolution(free_resolution(right, 1));
}

TEST_CASE("Tor over the lower-triangular subring of M_3(k[x]/(x^2))") {
  AlgebraPtr s = matrix_algebra(dual_numbers(Q), 3);
  Subalgebra r = lower_triangular_in_m3(s);
  Module s_right = restrict_module(Module::regular(s, Side::Right), r.inclusion);
  Module s_left = restrict_module(Module::regular(s, Side::Left), r.inclusion);
  TorResult t = tor(s_right, s_left, 2);
  CHECK(t.dims[0] == 18);
  CHECK(t.dims[1] == 0);
  CHECK(t.dims[2] != 0);
  CHECK(tor_from_resolution(free_resolution(s_right, 2), s_left, 1).dims[1] == 0);
  RingEpiVerdict epi = is_ring_epimorphism(r.inclusion);
  CHECK(epi.holds);
  CHECK(epi.tensor_dim == 18);
  HomologicalVerdict h = is_homological_up_to(r.inclusion, 2);
  CHECK_FALSE(h.holds);
  CHECK(*h.failing_degree == 2);
}

TEST_CASE("ring epimorphism examples") {
  // k -> k x k is not an epimorphism; the diagonal k -> M_2(k) neither.
  AlgebraPtr k = ground_field_algebra(Q);
  ProductAlgebra kk = product(k, k);
  AlgebraMorphism diag(k, kk.algebra, Matrix::from_ints(Q, {{1, 1}}));
  CHECK_FALSE(is_ring_epimorphism(diag).holds);
  CHECK(is_ring_epimorphism(diag).tensor_dim == 4);
  // Projection k x k -> k is surjective, hence an epimorphism, and
  // homological since k is projective over k x k.
  HomologicalVerdict h = is_homological_up_to(kk.proj1, 4);
  CHECK(h.holds);
  CHECK(h.unconditional);
  // Upper-triangular 2x2 into M_2(k) is a homological epimorphism.
  TriangularAlgebra tri = triangular_algebra(Bimodule::regular(k));
  AlgebraPtr m2 = matrix_algebra(k, 2);
  AlgebraMorphism inc(tri.algebra, m2, Matrix::from_ints(Q, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
  HomologicalVerdict hi = is_homological_up_to(inc, 4);
  CHECK(hi.ring_epi);
  CHECK(hi.holds);
  CHECK(hi.unconditional);
}

TEST_CASE("projective dimension needs a large enough characteristic") {
  AlgebraPtr d = dual_numbers(Field::prime(2));
  Module k = one_dim_module(d, Side::Right, 0);
  CHECK(code_of([&] { projective_dimension(k, 3); }) == ErrorCode::CharacteristicTooSmall);
  // Tor still works through free resolutions.
  CHECK(tor(k, one_dim_module(d, Side::Left, 0), 3).dims == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("windowed Tor stops at the first nonzero window") {
  AlgebraPtr d = dual_numbers(Q);
  Module k_right = one_dim_module(d, Side::Right, 0);
  Module k_left = one_dim_module(d, Side::Left, 0);
  // Tor_1 != 0: the first window (degree 1) suffices.
  TorResult early = tor_until_nonzero(k_right, k_left, 6);
  CHECK(early.max_degree == 1);
  CHECK(early.dims == std::vector<std::size_t>{1, 1});

  AlgebraPtr s = matrix_algebra(dual_numbers(Q), 3);
  Subalgebra r = lower_triangular_in_m3(s);
  Module s_right = restrict_module(Module::regular(s, Side::Right), r.inclusion);
  Module s_left = restrict_module(Module::regular(s, Side::Left), r.inclusion);
  // Windows 1 and 2; Tor_2 is the first nonzero group.
  TorResult t = tor_until_nonzero(s_right, s_left, 6);
  CHECK(t.max_degree == 2);
  CHECK(t.dims == tor(s_right, s_left, 2).dims);

  // Nothing nonzero: the full range comes back.
  TorResult zero = tor_until_nonzero(Module::regular(d, Side::Right), k_left, 5);
  CHECK(zero.dims == std::vector<std::size_t>{1, 0, 0, 0, 0, 0});
  CHECK(tor_until_nonzero(k_right, k_left, 0).dims == std::vector<std::size_t>{1});
}
