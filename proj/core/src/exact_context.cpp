#include "excon/exact_context.hpp"

#include <string>
#include <utility>

#include "excon/constructions.hpp"
#include "excon/homological.hpp"
#include "excon/linalg.hpp"

namespace excon {

namespace {

bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || same_structure(*a, *b); }

Vector slice(const Vector& v, std::size_t from, std::size_t count) {
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + count));
}

void place(Vector& dst, std::size_t offset, const Vector& src) {
  for (std::size_t i = 0; i < src.size(); ++i) dst[offset + i] = src[i];
}

std::string describe(const Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].to_string();
  }
  return out + ")";
}

/// First vector of `candidates` outside the row span of `span`.
std::optional<Vector> first_outside(const Subspace& span, const std::vector<Vector>& candidates) {
  for (const auto& c : candidates) {
    if (!span.contains(c)) return c;
  }
  return std::nullopt;
}

Module regular_restricted(const AlgebraMorphism& f, Side side) { return restrict_module(Module::regular(f.target(), side), f); }

}  // namespace

std::string to_string(ExactnessStage s) {
  switch (s) {
    case ExactnessStage::Injectivity:
      return "injectivity";
    case ExactnessStage::MiddleExactness:
      return "middle exactness";
    case ExactnessStage::Surjectivity:
      return "surjectivity";
  }
  return "unknown";
}

NotExactError::NotExactError(ExactnessStage stage, Vector witness, const std::string& message)
    : Error(ErrorCode::NotExact, to_string(stage) + " fails: " + message, {static_cast<std::size_t>(stage)}),
      stage_(stage),
      vector_witness_(std::move(witness)) {}

std::pair<Vector, Vector> ExactContext::decompose(const Vector& x) const {
  auto sol = solve_left(vstack(s_times_m, m_times_t), x);
  if (!sol) throw Error(ErrorCode::InternalInconsistency, "element of M outside S m + m T in a verified context");
  const std::size_t ds = s_times_m.rows();
  return {slice(*sol, 0, ds), slice(*sol, ds, m_times_t.rows())};
}

ExactContext check_exact_context(const AlgebraMorphism& lambda, const AlgebraMorphism& mu, const Bimodule& m_bimodule,
                                 const Vector& m) {
  if (!same_algebra(lambda.source(), mu.source())) throw Error(ErrorCode::AlgebraMismatch, "lambda and mu have different sources");
  if (!same_algebra(m_bimodule.left_algebra(), lambda.target())) {
    throw Error(ErrorCode::AlgebraMismatch, "M is not a left module over the target of lambda");
  }
  if (!same_algebra(m_bimodule.right_algebra(), mu.target())) {
    throw Error(ErrorCode::AlgebraMismatch, "M is not a right module over the target of mu");
  }
  if (m.size() != m_bimodule.dim()) throw Error(ErrorCode::DimensionMismatch, "m has the wrong number of coordinates");
  if (auto rep = check_bimodule(m_bimodule); !rep.ok) throw Error(ErrorCode::InvalidBimodule, rep.detail, rep.witness);

  const Field& f = lambda.source()->field();
  ExactContext ctx;
  ctx.lambda = lambda;
  ctx.mu = mu;
  ctx.bimodule = m_bimodule;
  ctx.m = m;
  const std::size_t dr = lambda.source()->dim();
  const std::size_t ds = lambda.target()->dim();
  const std::size_t dt = mu.target()->dim();
  const std::size_t dm = m_bimodule.dim();
  ctx.s_times_m = Matrix(f, ds, dm);
  for (std::size_t i = 0; i < ds; ++i) ctx.s_times_m.set_row(i, vec_mat(m, m_bimodule.left_actions()[i]));
  ctx.m_times_t = Matrix(f, dt, dm);
  for (std::size_t j = 0; j < dt; ++j) ctx.m_times_t.set_row(j, vec_mat(m, m_bimodule.right_actions()[j]));

  const Matrix inclusion = hstack(lambda.matrix(), mu.matrix());
  const Matrix difference = vstack(ctx.s_times_m, Scalar(f.from_int(-1)) * ctx.m_times_t);

  auto ker = left_kernel(inclusion);
  if (!ker.empty()) throw NotExactError(ExactnessStage::Injectivity, ker[0], "r = " + describe(ker[0]) + " maps to zero");

  const Matrix composite = inclusion * difference;
  for (std::size_t r = 0; r < dr; ++r) {
    if (!is_zero(composite.row(r))) {
      throw NotExactError(ExactnessStage::MiddleExactness, inclusion.row(r),
                          "lambda(r) m != m mu(r) for basis element " + std::to_string(r) + " of R");
    }
  }

  const Subspace image(f, dm, difference.row_list());
  if (image.dim() < dm) {
    std::vector<Vector> units;
    for (std::size_t k = 0; k < dm; ++k) units.push_back(unit_vector(f, dm, k));
    Vector w = *first_outside(image, units);
    throw NotExactError(ExactnessStage::Surjectivity, w, describe(w) + " is not in S m + m T");
  }

  const std::size_t rank_inclusion = dr;
  if (ds + dt - dm != rank_inclusion) {
    const Subspace included(f, ds + dt, inclusion.row_list());
    Vector w = *first_outside(included, left_kernel(difference));
    throw NotExactError(ExactnessStage::MiddleExactness, w, describe(w) + " satisfies s m = m t but does not come from R");
  }

  ctx.certificate = ExactnessCertificate{dr, ds, dt, dm, rank_inclusion, image.dim()};
  return ctx;
}

ExactPairVerdict is_exact_pair(const ExactContext& ctx) {
  const Field& f = ctx.field();
  const Module s_r = regular_restricted(ctx.lambda, Side::Right);
  const Module r_t = regular_restricted(ctx.mu, Side::Left);
  const TensorProduct tp = tensor_over(s_r, r_t);
  const std::size_t ds = ctx.s()->dim();
  const std::size_t dt = ctx.t()->dim();
  const std::size_t dm = ctx.bimodule.dim();

  Matrix ambient(f, ds * dt, dm);
  for (std::size_t a = 0; a < ds; ++a) {
    const Vector sm = ctx.s_times_m.row(a);
    for (std::size_t b = 0; b < dt; ++b) ambient.set_row(tp.ambient_index(a, b), vec_mat(sm, ctx.bimodule.right_actions()[b]));
  }
  ExactPairVerdict v;
  v.tensor_dim = tp.dim();
  v.m_dim = dm;
  v.gamma_rank = rank(tp.quotient.section * ambient);
  v.holds = v.tensor_dim == dm && v.gamma_rank == dm;

  const QuotientModule coker_lambda = quotient_module(s_r, ctx.lambda.matrix().row_list());
  const QuotientModule coker_mu = quotient_module(r_t, ctx.mu.matrix().row_list());
  v.coker_tensor_dim = tensor_dimension(coker_lambda.module, coker_mu.module);
  if (v.holds != (v.coker_tensor_dim == 0)) {
    throw Error(ErrorCode::InternalInconsistency, "gamma bijectivity disagrees with the cokernel tensor criterion",
                {v.tensor_dim, v.gamma_rank, v.coker_tensor_dim});
  }
  return v;
}

RigidityReport is_rigid(const ModuleMap& f) {
  const Module& y = f.source;
  const Module& x = f.target;
  if (y.side() != x.side() || !same_algebra(y.algebra(), x.algebra())) {
    throw Error(ErrorCode::AlgebraMismatch, "rigidity needs modules over the same algebra and side");
  }
  if (!is_module_map(y, x, f.matrix)) throw Error(ErrorCode::InvalidArgument, "the matrix is not a module homomorphism");
  const Field& fld = y.field();
  const EndAlgebra ey = end_algebra(y);
  const EndAlgebra ex = end_algebra(x);
  const HomSpace hom = hom_space(y, x);

  std::vector<Vector> span;
  for (const auto& e : ey.hom.basis()) span.push_back(flatten(e * f.matrix));
  for (const auto& g : ex.hom.basis()) span.push_back(flatten(f.matrix * g));
  const Subspace sub(fld, y.dim() * x.dim(), span);

  RigidityReport rep;
  rep.morphism = f;
  rep.hom_dim = hom.dim();
  rep.span_dim = sub.dim();
  rep.holds = rep.span_dim == rep.hom_dim;
  if (!rep.holds) {
    std::vector<Matrix> candidates;
    if (y.dim() == x.dim()) {
      Matrix id = Matrix::identity(fld, y.dim());
      if (is_module_map(y, x, id)) candidates.push_back(std::move(id));
    }
    for (const auto& h : hom.basis()) candidates.push_back(h);
    for (const auto& c : candidates) {
      if (!sub.contains(flatten(c))) {
        rep.witness = c;
        break;
      }
    }
  }
  return rep;
}

AlgebraMorphism inclusion_between(const Subalgebra& small, const Subalgebra& big) {
  const Matrix& into = big.inclusion.matrix();
  Matrix m(small.algebra->field(), small.algebra->dim(), big.algebra->dim());
  for (std::size_t i = 0; i < small.algebra->dim(); ++i) {
    auto c = solve_left(into, small.inclusion.image_of_basis(i));
    if (!c) throw Error(ErrorCode::NotClosed, "subalgebra is not contained in the larger one", {i});
    m.set_row(i, *c);
  }
  return AlgebraMorphism(small.algebra, big.algebra, std::move(m));
}

RigidContext context_from_rigid(const ModuleMap& f) {
  const RigidityReport rep = is_rigid(f);
  if (!rep.holds) throw Error(ErrorCode::NotRigid, "Hom(Y, X) is larger than End(Y) f + f End(X)");
  const Field& fld = f.source.field();
  RigidContext out;
  out.end_y = end_algebra(f.source);
  out.end_x = end_algebra(f.target);
  out.hom = hom_space(f.source, f.target);
  const AlgebraPtr& s = out.end_y.algebra;
  const AlgebraPtr& t = out.end_x.algebra;
  const std::size_t dm = out.hom.dim();

  auto coords = [&](const Matrix& h) {
    auto c = out.hom.coordinates(h);
    if (!c) throw Error(ErrorCode::InternalInconsistency, "composite left Hom(Y, X)");
    return *c;
  };
  std::vector<Matrix> left;
  for (const auto& e : out.end_y.hom.basis()) {
    Matrix act(fld, dm, dm);
    for (std::size_t a = 0; a < dm; ++a) act.set_row(a, coords(e * out.hom.basis()[a]));
    left.push_back(std::move(act));
  }
  std::vector<Matrix> right;
  for (const auto& g : out.end_x.hom.basis()) {
    Matrix act(fld, dm, dm);
    for (std::size_t a = 0; a < dm; ++a) act.set_row(a, coords(out.hom.basis()[a] * g));
    right.push_back(std::move(act));
  }
  Bimodule m = Bimodule::trusted(s, t, dm, std::move(left), std::move(right));
  const Vector m_coords = coords(f.matrix);

  // K = {(s, t) : s f = f t}, the kernel of the difference map on S x T.
  ProductAlgebra st = product(s, t);
  Matrix diff(fld, s->dim() + t->dim(), dm);
  for (std::size_t i = 0; i < s->dim(); ++i) diff.set_row(i, coords(out.end_y.hom.basis()[i] * f.matrix));
  for (std::size_t j = 0; j < t->dim(); ++j) diff.set_row(s->dim() + j, scale(fld.from_int(-1), coords(f.matrix * out.end_x.hom.basis()[j])));
  Subalgebra k = subalgebra_from_spanning(st.algebra, left_kernel(diff));
  AlgebraMorphism lambda = compose(k.inclusion, st.proj1);
  AlgebraMorphism mu = compose(k.inclusion, st.proj2);
  out.context = check_exact_context(lambda, mu, m, m_coords);
  return out;
}

ExtensionContext context_from_extension(const AlgebraMorphism& lambda) {
  const AlgebraPtr& r = lambda.source();
  const AlgebraPtr& s = lambda.target();
  const Field& f = r->field();
  if (rank(lambda.matrix()) != r->dim()) {
    auto ker = left_kernel(lambda.matrix());
    throw Error(ErrorCode::NotInjective, "lambda has a nonzero kernel vector " + describe(ker.at(0)));
  }
  if (r->dim() == s->dim()) throw Error(ErrorCode::DegenerateQuotient, "S / R is zero");

  ExtensionContext out;
  out.source = regular_restricted(lambda, Side::Left);
  out.quotient = quotient_module(out.source, lambda.matrix().row_list());
  const Module& x = out.quotient.module;
  out.s_prime = end_algebra(x);
  out.hom = hom_space(out.source, x);
  out.pi = out.quotient.presentation.projection;
  const std::size_t dm = out.hom.dim();

  auto coords = [&](const HomSpace& h, const Matrix& g) {
    auto c = h.coordinates(g);
    if (!c) throw Error(ErrorCode::InternalInconsistency, "map is not R-linear");
    return *c;
  };
  // s . h = (right multiplication by s) then h.
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < s->dim(); ++i) {
    const Matrix rs = s->right_mult_basis(i);
    Matrix act(f, dm, dm);
    for (std::size_t a = 0; a < dm; ++a) act.set_row(a, coords(out.hom, rs * out.hom.basis()[a]));
    left.push_back(std::move(act));
  }
  std::vector<Matrix> right;
  for (const auto& g : out.s_prime.hom.basis()) {
    Matrix act(f, dm, dm);
    for (std::size_t a = 0; a < dm; ++a) act.set_row(a, coords(out.hom, out.hom.basis()[a] * g));
    right.push_back(std::move(act));
  }
  Bimodule m = Bimodule::trusted(s, out.s_prime.algebra, dm, std::move(left), std::move(right));

  const QuotientPresentation& q = out.quotient.presentation;
  Matrix lp(f, r->dim(), out.s_prime.algebra->dim());
  for (std::size_t i = 0; i < r->dim(); ++i) {
    lp.set_row(i, coords(out.s_prime.hom, q.section * s->right_mult_matrix(lambda.image_of_basis(i)) * q.projection));
  }
  AlgebraMorphism lambda_prime(r, out.s_prime.algebra, std::move(lp));
  out.context = check_exact_context(lambda, lambda_prime, m, coords(out.hom, out.pi));
  return out;
}

namespace {

void check_pairings(const MoritaData& d) {
  const AlgebraPtr& a = d.a;
  const AlgebraPtr& c = d.c;
  const Bimodule& x = d.x;
  const Bimodule& y = d.y;
  if (!same_algebra(x.left_algebra(), a) || !same_algebra(x.right_algebra(), c) || !same_algebra(y.left_algebra(), c) ||
      !same_algebra(y.right_algebra(), a)) {
    throw Error(ErrorCode::AlgebraMismatch, "X must be A-C and Y must be C-A");
  }
  const std::size_t dx = x.dim();
  const std::size_t dy = y.dim();
  if (d.f.size() != dx || d.g.size() != dy) throw Error(ErrorCode::DimensionMismatch, "pairing tables have the wrong shape");
  for (const auto& row : d.f) {
    if (row.size() != dy) throw Error(ErrorCode::DimensionMismatch, "pairing f has the wrong shape");
  }
  for (const auto& row : d.g) {
    if (row.size() != dx) throw Error(ErrorCode::DimensionMismatch, "pairing g has the wrong shape");
  }
  const Field& fld = a->field();
  // Bilinear extensions of the pairing tables.
  auto fx = [&](const Vector& u, const Vector& w) {
    Vector out = a->zero();
    for (std::size_t i = 0; i < dx; ++i) {
      if (u[i].is_zero()) continue;
      for (std::size_t j = 0; j < dy; ++j) {
        if (!w[j].is_zero()) axpy(out, u[i] * w[j], d.f[i][j]);
      }
    }
    return out;
  };
  auto gy = [&](const Vector& w, const Vector& u) {
    Vector out = c->zero();
    for (std::size_t j = 0; j < dy; ++j) {
      if (w[j].is_zero()) continue;
      for (std::size_t i = 0; i < dx; ++i) {
        if (!u[i].is_zero()) axpy(out, w[j] * u[i], d.g[j][i]);
      }
    }
    return out;
  };
  auto fail = [](const std::string& what, std::size_t p, std::size_t q, std::size_t r) {
    throw Error(ErrorCode::IncompatiblePairings, what + " fails on basis triple (" + std::to_string(p) + ", " + std::to_string(q) + ", " +
                                                     std::to_string(r) + ")",
                {p, q, r});
  };
  for (std::size_t i = 0; i < dx; ++i) {
    const Vector xi = unit_vector(fld, dx, i);
    for (std::size_t j = 0; j < dy; ++j) {
      const Vector yj = unit_vector(fld, dy, j);
      for (std::size_t p = 0; p < a->dim(); ++p) {
        const Vector ap = a->basis_vector(p);
        if (fx(x.left_act(ap, xi), yj) != a->multiply(ap, d.f[i][j])) fail("f(a x, y) = a f(x, y)", p, i, j);
        if (fx(xi, y.right_act(yj, ap)) != a->multiply(d.f[i][j], ap)) fail("f(x, y a) = f(x, y) a", i, j, p);
        if (gy(y.right_act(yj, ap), xi) != gy(yj, x.left_act(ap, xi))) fail("g(y a, x) = g(y, a x)", j, p, i);
      }
      for (std::size_t q = 0; q < c->dim(); ++q) {
        const Vector cq = c->basis_vector(q);
        if (gy(y.left_act(cq, yj), xi) != c->multiply(cq, d.g[j][i])) fail("g(c y, x) = c g(y, x)", q, j, i);
        if (gy(yj, x.right_act(xi, cq)) != c->multiply(d.g[j][i], cq)) fail("g(y, x c) = g(y, x) c", j, i, q);
        if (fx(x.right_act(xi, cq), yj) != fx(xi, y.left_act(cq, yj))) fail("f(x c, y) = f(x, c y)", i, q, j);
      }
    }
  }
  for (std::size_t i = 0; i < dx; ++i) {
    for (std::size_t j = 0; j < dy; ++j) {
      for (std::size_t k = 0; k < dx; ++k) {
        const Vector xk = unit_vector(fld, dx, k);
        if (x.left_act(d.f[i][j], xk) != x.right_act(unit_vector(fld, dx, i), d.g[j][k])) fail("(x y) x' = x (y x')", i, j, k);
      }
    }
  }
  for (std::size_t j = 0; j < dy; ++j) {
    for (std::size_t i = 0; i < dx; ++i) {
      for (std::size_t l = 0; l < dy; ++l) {
        const Vector yl = unit_vector(fld, dy, l);
        if (y.left_act(d.g[j][i], yl) != y.right_act(unit_vector(fld, dy, j), d.f[i][l])) fail("(y x) y' = y (x y')", j, i, l);
      }
    }
  }
}

}  // namespace

MoritaContext context_from_morita(const MoritaData& data) {
  check_pairings(data);
  const AlgebraPtr& a = data.a;
  const AlgebraPtr& c = data.c;
  const Field& fld = a->field();
  const std::size_t da = a->dim();
  const std::size_t dx = data.x.dim();
  const std::size_t dy = data.y.dim();
  const std::size_t dc = c->dim();
  const std::size_t ox = da;
  const std::size_t oy = da + dx;
  const std::size_t oc = da + dx + dy;
  const std::size_t n = oc + dc;

  std::vector<std::string> labels;
  for (const auto& l : a->labels()) labels.push_back("A." + l);
  for (std::size_t i = 0; i < dx; ++i) labels.push_back("X." + std::to_string(i));
  for (std::size_t i = 0; i < dy; ++i) labels.push_back("Y." + std::to_string(i));
  for (const auto& l : c->labels()) labels.push_back("C." + l);

  enum class Part { A, X, Y, C };
  auto part = [&](std::size_t p) -> std::pair<Part, std::size_t> {
    if (p < ox) return {Part::A, p};
    if (p < oy) return {Part::X, p - ox};
    if (p < oc) return {Part::Y, p - oy};
    return {Part::C, p - oc};
  };
  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n, zero_vector(fld, n)));
  for (std::size_t p = 0; p < n; ++p) {
    const auto [pp, i] = part(p);
    for (std::size_t q = 0; q < n; ++q) {
      const auto [pq, j] = part(q);
      Vector& out = mult[p][q];
      if (pp == Part::A && pq == Part::A) place(out, 0, a->multiply(a->basis_vector(i), a->basis_vector(j)));
      if (pp == Part::A && pq == Part::X) place(out, ox, data.x.left_act(a->basis_vector(i), unit_vector(fld, dx, j)));
      if (pp == Part::X && pq == Part::Y) place(out, 0, data.f[i][j]);
      if (pp == Part::X && pq == Part::C) place(out, ox, data.x.right_act(unit_vector(fld, dx, i), c->basis_vector(j)));
      if (pp == Part::Y && pq == Part::A) place(out, oy, data.y.right_act(unit_vector(fld, dy, i), a->basis_vector(j)));
      if (pp == Part::Y && pq == Part::X) place(out, oc, data.g[i][j]);
      if (pp == Part::C && pq == Part::Y) place(out, oy, data.y.left_act(c->basis_vector(i), unit_vector(fld, dy, j)));
      if (pp == Part::C && pq == Part::C) place(out, oc, c->multiply(c->basis_vector(i), c->basis_vector(j)));
    }
  }
  Vector unit = zero_vector(fld, n);
  place(unit, 0, a->unit());
  place(unit, oc, c->unit());

  MoritaContext out;
  out.data = data;
  out.gamma = Algebra::make(fld, labels, mult, unit);
  auto span_of = [&](bool with_x, bool with_y) {
    std::vector<Vector> v;
    for (std::size_t p = 0; p < n; ++p) {
      const Part pp = part(p).first;
      if (pp == Part::A || pp == Part::C || (pp == Part::X && with_x) || (pp == Part::Y && with_y)) {
        v.push_back(unit_vector(fld, n, p));
      }
    }
    std::vector<std::string> sub_labels;
    for (const auto& e : v) {
      for (std::size_t p = 0; p < n; ++p) {
        if (!e[p].is_zero()) sub_labels.push_back(labels[p]);
      }
    }
    return subalgebra_from_spanning(out.gamma, v, sub_labels);
  };
  out.r = span_of(false, false);
  out.s = span_of(true, false);
  out.t = span_of(false, true);
  AlgebraMorphism lambda = inclusion_between(out.r, out.s);
  AlgebraMorphism mu = inclusion_between(out.r, out.t);
  Bimodule m = restrict_bimodule(Bimodule::regular(out.gamma), out.s.inclusion, out.t.inclusion);
  out.context = check_exact_context(lambda, mu, m, out.gamma->unit());
  return out;
}

namespace {

struct Split {
  std::vector<Vector> complement;  // RREF basis of X
  Matrix decompose;                // dim S x (dim R + dim X): s -> (r, x)
};

Split check_pure(const PureExtension& e) {
  const AlgebraMorphism& l = e.inclusion;
  const AlgebraPtr& r = l.source();
  const AlgebraPtr& s = l.target();
  const Field& f = r->field();
  if (rank(l.matrix()) != r->dim()) throw Error(ErrorCode::NotInjective, "the extension map is not injective");
  for (const auto& v : e.ideal) {
    if (v.size() != s->dim()) throw Error(ErrorCode::DimensionMismatch, "ideal vector has the wrong length");
  }
  const Subspace x(f, s->dim(), e.ideal);
  for (std::size_t k = 0; k < x.dim(); ++k) {
    for (std::size_t i = 0; i < s->dim(); ++i) {
      const Vector b = s->basis_vector(i);
      if (!x.contains(s->multiply(b, x.basis()[k])) || !x.contains(s->multiply(x.basis()[k], b))) {
        throw Error(ErrorCode::NotIdeal, "complement is not a two-sided ideal", {k, i});
      }
    }
  }
  std::vector<Vector> rows = l.matrix().row_list();
  rows.insert(rows.end(), x.basis().begin(), x.basis().end());
  const Matrix stacked = Matrix::from_rows(f, rows, s->dim());
  if (rows.size() != s->dim() || rank(stacked) != s->dim()) {
    throw Error(ErrorCode::NotBimoduleSplitting, "image of R and the ideal do not split S as a direct sum",
                {r->dim(), x.dim(), s->dim()});
  }
  return Split{x.basis(), inverse(stacked)};
}

}  // namespace

PureContext context_from_strictly_pure(const PureExtension& s_ext, const PureExtension& t_ext) {
  const AlgebraPtr& r = s_ext.inclusion.source();
  if (!same_algebra(r, t_ext.inclusion.source())) throw Error(ErrorCode::AlgebraMismatch, "extensions of different rings");
  const AlgebraPtr& s = s_ext.inclusion.target();
  const AlgebraPtr& t = t_ext.inclusion.target();
  const Field& fld = r->field();
  const Split sx = check_pure(s_ext);
  const Split ty = check_pure(t_ext);
  const std::size_t dr = r->dim();
  const std::size_t dx = sx.complement.size();
  const std::size_t dy = ty.complement.size();
  const std::size_t oy = dr + dx;
  const std::size_t n = oy + dy;

  // S -> M and T -> M through the splittings.
  Matrix into_s(fld, s->dim(), n);
  for (std::size_t i = 0; i < s->dim(); ++i) {
    Vector row = zero_vector(fld, n);
    place(row, 0, sx.decompose.row(i));
    into_s.set_row(i, row);
  }
  Matrix into_t(fld, t->dim(), n);
  for (std::size_t i = 0; i < t->dim(); ++i) {
    const Vector d = ty.decompose.row(i);
    Vector row = zero_vector(fld, n);
    place(row, 0, slice(d, 0, dr));
    place(row, oy, slice(d, dr, dy));
    into_t.set_row(i, row);
  }
  auto lift_s = [&](std::size_t p) { return p < dr ? s_ext.inclusion.image_of_basis(p) : sx.complement[p - dr]; };
  auto lift_t = [&](std::size_t p) { return p < dr ? t_ext.inclusion.image_of_basis(p) : ty.complement[p - oy]; };

  std::vector<std::string> labels;
  for (const auto& l : r->labels()) labels.push_back("R." + l);
  for (std::size_t i = 0; i < dx; ++i) labels.push_back("X." + std::to_string(i));
  for (std::size_t i = 0; i < dy; ++i) labels.push_back("Y." + std::to_string(i));
  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n, zero_vector(fld, n)));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      const bool in_s = p < oy && q < oy;
      const bool in_t = (p < dr || p >= oy) && (q < dr || q >= oy);
      if (in_s) {
        mult[p][q] = vec_mat(s->multiply(lift_s(p), lift_s(q)), into_s);
      } else if (in_t) {
        mult[p][q] = vec_mat(t->multiply(lift_t(p), lift_t(q)), into_t);
      }
    }
  }
  PureContext out;
  out.ring = Algebra::make(fld, labels, mult, vec_mat(s->unit(), into_s));
  out.into_s = AlgebraMorphism(s, out.ring, std::move(into_s));
  out.into_t = AlgebraMorphism(t, out.ring, std::move(into_t));
  out.x_basis = sx.complement;
  out.y_basis = ty.complement;
  Bimodule m = restrict_bimodule(Bimodule::regular(out.ring), out.into_s, out.into_t);
  out.context = check_exact_context(s_ext.inclusion, t_ext.inclusion, m, out.ring->unit());
  return out;
}

MilnorContext context_from_milnor(const AlgebraMorphism& j1, const AlgebraMorphism& j2) {
  const AlgebraPtr& target = j1.target();
  if (!same_algebra(target, j2.target())) throw Error(ErrorCode::AlgebraMismatch, "Milnor square maps into different rings");
  if (rank(j1.matrix()) != target->dim() && rank(j2.matrix()) != target->dim()) {
    throw Error(ErrorCode::NeitherSurjective, "neither map of the square is surjective");
  }
  const Field& f = target->field();
  MilnorContext out;
  out.product = product(j1.source(), j2.source());
  const Matrix diff = vstack(j1.matrix(), Scalar(f.from_int(-1)) * j2.matrix());
  out.pullback = subalgebra_from_spanning(out.product.algebra, left_kernel(diff));
  AlgebraMorphism i1 = compose(out.pullback.inclusion, out.product.proj1);
  AlgebraMorphism i2 = compose(out.pullback.inclusion, out.product.proj2);
  Bimodule m = restrict_bimodule(Bimodule::regular(target), j1, j2);
  out.context = check_exact_context(i1, i2, m, target->unit());
  return out;
}

TauReport tau_comparison(const ExtensionContext& ext) {
  const ExactContext& ctx = ext.context;
  const AlgebraPtr& s = ctx.s();
  const AlgebraPtr& sp = ext.s_prime.algebra;
  const Field& f = ctx.field();
  const std::size_t ds = s->dim();
  const std::size_t dq = ext.quotient.module.dim();

  // S as an S-R-bimodule and S' as an R-S'-bimodule (via lambda').
  std::vector<Matrix> s_left, s_right, sp_left, sp_right;
  for (std::size_t i = 0; i < ds; ++i) s_left.push_back(s->left_mult_basis(i));
  for (std::size_t k = 0; k < ctx.r()->dim(); ++k) {
    s_right.push_back(s->right_mult_matrix(ctx.lambda.image_of_basis(k)));
    sp_left.push_back(sp->left_mult_matrix(ctx.mu.image_of_basis(k)));
  }
  for (std::size_t j = 0; j < sp->dim(); ++j) sp_right.push_back(sp->right_mult_basis(j));
  const TensorBimodule tb = tensor_bimodule(Bimodule::trusted(s, ctx.r(), ds, s_left, s_right),
                                            Bimodule::trusted(ctx.r(), sp, sp->dim(), sp_left, sp_right));
  const TriangularAlgebra b = triangular_algebra(tb.bimodule);

  const Module sum = direct_sum(ext.source, ext.quotient.module);
  const EndAlgebra lam = end_algebra(sum);
  const std::size_t n = ds + dq;

  auto coords = [&](const Matrix& block) {
    auto c = lam.hom.coordinates(block);
    if (!c) throw Error(ErrorCode::InternalInconsistency, "block matrix is not an R-endomorphism of S + S/R");
    return *c;
  };
  Matrix tau(f, b.algebra->dim(), lam.algebra->dim());
  for (std::size_t i = 0; i < ds; ++i) {
    Matrix blk(f, n, n);
    blk.set_block(0, 0, s->right_mult_basis(i));
    tau.set_row(i, coords(blk));
  }
  const std::size_t dsp = sp->dim();
  for (std::size_t k = 0; k < tb.tensor.dim(); ++k) {
    const Vector amb = tb.tensor.quotient.section.row(k);
    Matrix top(f, ds, dq);
    for (std::size_t a = 0; a < ds; ++a) {
      for (std::size_t c = 0; c < dsp; ++c) {
        const Scalar& w = amb[tb.tensor.ambient_index(a, c)];
        if (!w.is_zero()) top.add_scaled(w, s->right_mult_basis(a) * ext.pi * ext.s_prime.hom.basis()[c]);
      }
    }
    Matrix blk(f, n, n);
    blk.set_block(0, ds, top);
    tau.set_row(b.offset_m() + k, coords(blk));
  }
  for (std::size_t j = 0; j < dsp; ++j) {
    Matrix blk(f, n, n);
    blk.set_block(ds, ds, ext.s_prime.hom.basis()[j]);
    tau.set_row(b.offset_t() + j, coords(blk));
  }
  if (auto rep = check_morphism(b.algebra, lam.algebra, tau); !rep.ok) {
    throw Error(ErrorCode::InternalInconsistency, "tau is not a ring homomorphism (" + rep.failure + ")", rep.witness);
  }

  TauReport out;
  out.dim_b = b.algebra->dim();
  out.dim_lambda = lam.algebra->dim();
  out.hom_back_dim = hom_space(ext.quotient.module, ext.source).dim();
  out.hom_back_zero = out.hom_back_dim == 0;
  out.tau_rank = rank(tau);
  out.tau_bijective = out.tau_rank == out.dim_b && out.tau_rank == out.dim_lambda;
  out.ring_epi = is_ring_epimorphism(ctx.lambda).holds;
  if (out.ring_epi) out.implication_holds = out.hom_back_zero && out.tau_bijective;
  return out;
}

}  // namespace excon
