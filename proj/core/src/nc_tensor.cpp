#include "excon/nc_tensor.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "excon/linalg.hpp"

namespace excon {

namespace {

Module regular_restricted(const AlgebraMorphism& f, Side side) { return restrict_module(Module::regular(f.target(), side), f); }

Vector slice(const Vector& v, std::size_t from, std::size_t count) {
  return Vector(v.begin() + static_cast<std::ptrdiff_t>(from), v.begin() + static_cast<std::ptrdiff_t>(from + count));
}

Vector padded(const Field& f, const Vector& v, std::size_t offset, std::size_t n) {
  Vector out = zero_vector(f, n);
  for (std::size_t i = 0; i < v.size(); ++i) out[offset + i] = v[i];
  return out;
}

Vector dense(const Algebra& a, const SparseVector& v) { return to_dense(a.field(), v, a.dim()); }

/// Runs `fn`, turning any library error into InternalInconsistency.
template <class Fn>
auto consistent(const std::string& what, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(ErrorCode::InternalInconsistency, what + ": " + e.what(), e.witness());
  }
}

/// T as a T-R-bimodule and S as an R-S-bimodule.
TensorBimodule tensor_of(const ExactContext& ctx) {
  const AlgebraPtr& s = ctx.s();
  const AlgebraPtr& t = ctx.t();
  std::vector<Matrix> t_left, t_right, s_left, s_right;
  for (std::size_t a = 0; a < t->dim(); ++a) t_left.push_back(t->left_mult_basis(a));
  for (std::size_t r = 0; r < ctx.r()->dim(); ++r) {
    t_right.push_back(t->right_mult_matrix(ctx.mu.image_of_basis(r)));
    s_left.push_back(s->left_mult_matrix(ctx.lambda.image_of_basis(r)));
  }
  for (std::size_t d = 0; d < s->dim(); ++d) s_right.push_back(s->right_mult_basis(d));
  return tensor_bimodule(Bimodule::trusted(t, ctx.r(), t->dim(), std::move(t_left), std::move(t_right)),
                         Bimodule::trusted(ctx.r(), s, s->dim(), std::move(s_left), std::move(s_right)));
}

Matrix beta_on(const ExactContext& ctx, const TensorProduct& tp) {
  const Field& f = ctx.field();
  const Vector& one_s = ctx.s()->unit();
  const Vector& one_t = ctx.t()->unit();
  // Solutions of x = s m + m t differ by (lambda r, -mu r); beta ignores the
  // choice iff 1 (x) lambda(r) = mu(r) (x) 1 for every basis element r.
  for (std::size_t r = 0; r < ctx.r()->dim(); ++r) {
    if (tp.pure(one_t, ctx.lambda.image_of_basis(r)) != tp.pure(ctx.mu.image_of_basis(r), one_s)) {
      throw Error(ErrorCode::InternalInconsistency, "beta depends on the chosen decomposition", {r});
    }
  }
  const std::size_t dm = ctx.bimodule.dim();
  Matrix beta(f, dm, tp.dim());
  for (std::size_t k = 0; k < dm; ++k) {
    auto [s, t] = ctx.decompose(unit_vector(f, dm, k));
    beta.set_row(k, add(tp.pure(one_t, s), tp.pure(t, one_s)));
  }
  return beta;
}

}  // namespace

Matrix build_beta(const ExactContext& ctx) { return beta_on(ctx, tensor_of(ctx).tensor); }

Vector NcTensorRing::multiply_ambient(const Vector& u, const Vector& w) const {
  const std::size_t ds = context.s()->dim();
  const std::size_t dt = context.t()->dim();
  const auto& lt = tensor.bimodule.left_actions();
  const auto& rs = tensor.bimodule.right_actions();
  Vector out = zero_vector(context.field(), dim());
  for (std::size_t p = 0; p < u.size(); ++p) {
    if (u[p].is_zero()) continue;
    const std::size_t a = p / ds;
    const std::size_t b = p % ds;
    for (std::size_t q = 0; q < w.size(); ++q) {
      if (w[q].is_zero()) continue;
      const std::size_t c = q / ds;
      const std::size_t d = q % ds;
      axpy(out, u[p] * w[q], vec_mat(vec_mat(delta.row(b * dt + c), lt[a]), rs[d]));
    }
  }
  return out;
}

NcTensorRing build_nc_tensor(const ExactContext& ctx) {
  const Field& f = ctx.field();
  const AlgebraPtr& s = ctx.s();
  const AlgebraPtr& t = ctx.t();
  const std::size_t ds = s->dim();
  const std::size_t dt = t->dim();
  NcTensorRing out;
  out.context = ctx;
  out.tensor = tensor_of(ctx);
  const TensorProduct& tp = out.tensor.tensor;
  const std::size_t dq = tp.dim();
  out.beta = beta_on(ctx, tp);

  out.delta = Matrix(f, ds * dt, dq);
  for (std::size_t b = 0; b < ds; ++b) {
    const Vector sm = ctx.s_times_m.row(b);
    for (std::size_t c = 0; c < dt; ++c) {
      out.delta.set_row(b * dt + c, vec_mat(vec_mat(sm, ctx.bimodule.right_actions()[c]), out.beta));
    }
  }

  const auto& lt = out.tensor.bimodule.left_actions();
  const auto& rs = out.tensor.bimodule.right_actions();
  const auto& coord = tp.quotient.basis_coordinates;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < dq; ++i) labels.push_back(t->label(coord[i] / ds) + "(x)" + s->label(coord[i] % ds));
  std::vector<std::vector<Vector>> mult(dq, std::vector<Vector>(dq));
  for (std::size_t i = 0; i < dq; ++i) {
    const std::size_t a = coord[i] / ds;
    const std::size_t b = coord[i] % ds;
    for (std::size_t j = 0; j < dq; ++j) {
      const std::size_t c = coord[j] / ds;
      const std::size_t d = coord[j] % ds;
      mult[i][j] = vec_mat(vec_mat(out.delta.row(b * dt + c), lt[a]), rs[d]);
    }
  }
  const Vector unit = tp.pure(t->unit(), s->unit());
  out.algebra = consistent("ring axioms of T (x)_R S", [&] { return Algebra::make(f, labels, mult, unit); });

  Matrix rho(f, ds, dq);
  for (std::size_t b = 0; b < ds; ++b) rho.set_row(b, tp.pure(t->unit(), s->basis_vector(b)));
  Matrix phi(f, dt, dq);
  for (std::size_t a = 0; a < dt; ++a) phi.set_row(a, tp.pure(t->basis_vector(a), s->unit()));
  out.rho = consistent("rho", [&] { return AlgebraMorphism(s, out.algebra, rho); });
  out.phi = consistent("phi", [&] { return AlgebraMorphism(t, out.algebra, phi); });

  if (vec_mat(ctx.m, out.beta) != unit) throw Error(ErrorCode::InternalInconsistency, "beta(m) is not the unit");
  const std::size_t dm = ctx.bimodule.dim();
  for (std::size_t k = 0; k < dm; ++k) {
    const Vector bx = out.beta.row(k);
    for (std::size_t i = 0; i < ds; ++i) {
      if (vec_mat(ctx.bimodule.left_actions()[i].row(k), out.beta) != out.algebra->multiply(out.rho.image_of_basis(i), bx)) {
        throw Error(ErrorCode::InternalInconsistency, "beta is not left S-linear", {i, k});
      }
    }
    for (std::size_t j = 0; j < dt; ++j) {
      if (vec_mat(ctx.bimodule.right_actions()[j].row(k), out.beta) != out.algebra->multiply(bx, out.phi.image_of_basis(j))) {
        throw Error(ErrorCode::InternalInconsistency, "beta is not right T-linear", {k, j});
      }
    }
  }
  return out;
}

bool section_perturbation_check(const NcTensorRing& ring) {
  const QuotientPresentation& q = ring.tensor.tensor.quotient;
  const std::vector<Vector> rels = q.relations_rref.row_list();
  if (rels.empty()) return true;
  const std::size_t dq = ring.dim();
  for (std::size_t i = 0; i < dq; ++i) {
    for (std::size_t j = 0; j < dq; ++j) {
      const std::size_t k = (i * dq + j) % rels.size();
      const Vector u = add(q.section.row(i), rels[k]);
      const Vector w = add(q.section.row(j), rels[(k + 1) % rels.size()]);
      if (ring.multiply_ambient(u, w) != dense(*ring.algebra, ring.algebra->product(i, j))) return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------ oracles

BlockOracle nc_tensor_morita_oracle(const MoritaData& d) {
  const AlgebraPtr& a = d.a;
  const AlgebraPtr& c = d.c;
  const Field& fld = a->field();
  const std::size_t da = a->dim();
  const std::size_t dx = d.x.dim();
  const std::size_t dy = d.y.dim();
  const std::size_t dc = c->dim();
  const std::size_t ox = da, oy = da + dx, oc = oy + dy, ow = oc + dc;

  BlockOracle out;
  out.w = tensor_over(d.y.as_right(), d.x.as_left());
  out.offset_w = ow;
  const std::size_t dw = out.w.dim();
  const std::size_t n = ow + dw;
  auto ex = [&](std::size_t i) { return unit_vector(fld, dx, i); };
  auto ey = [&](std::size_t i) { return unit_vector(fld, dy, i); };
  // Bilinear extensions of the pairings.
  auto fxy = [&](const Vector& x, const Vector& y) {
    Vector out_a = a->zero();
    for (std::size_t i = 0; i < dx; ++i) {
      for (std::size_t j = 0; j < dy; ++j) {
        if (!x[i].is_zero() && !y[j].is_zero()) axpy(out_a, x[i] * y[j], d.f[i][j]);
      }
    }
    return out_a;
  };
  // W basis k is the class of y_p (x) x_q.
  auto w_pair = [&](std::size_t k) {
    const std::size_t amb = out.w.quotient.basis_coordinates[k];
    return std::make_pair(amb / dx, amb % dx);
  };

  enum Part { A, X, Y, C, W };
  auto part = [&](std::size_t p) -> std::pair<Part, std::size_t> {
    if (p < ox) return {A, p};
    if (p < oy) return {X, p - ox};
    if (p < oc) return {Y, p - oy};
    if (p < ow) return {C, p - oc};
    return {W, p - ow};
  };
  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n, zero_vector(fld, n)));
  for (std::size_t p = 0; p < n; ++p) {
    const auto [pp, i] = part(p);
    for (std::size_t q = 0; q < n; ++q) {
      const auto [pq, j] = part(q);
      Vector& o = mult[p][q];
      if (pp == A && pq == A) o = padded(fld, dense(*a, a->product(i, j)), 0, n);
      if (pp == A && pq == X) o = padded(fld, d.x.left_act(a->basis_vector(i), ex(j)), ox, n);
      if (pp == X && pq == Y) o = padded(fld, d.f[i][j], 0, n);
      if (pp == X && pq == C) o = padded(fld, d.x.right_act(ex(i), c->basis_vector(j)), ox, n);
      if (pp == Y && pq == A) o = padded(fld, d.y.right_act(ey(i), a->basis_vector(j)), oy, n);
      if (pp == Y && pq == X) o = padded(fld, out.w.pure(ey(i), ex(j)), ow, n);
      if (pp == C && pq == Y) o = padded(fld, d.y.left_act(c->basis_vector(i), ey(j)), oy, n);
      if (pp == C && pq == C) o = padded(fld, dense(*c, c->product(i, j)), oc, n);
      if (pp == X && pq == W) {
        const auto [yp, xq] = w_pair(j);
        o = padded(fld, d.x.right_act(ex(i), d.g[yp][xq]), ox, n);
      }
      if (pp == W && pq == Y) {
        const auto [yp, xq] = w_pair(i);
        o = padded(fld, d.y.left_act(d.g[yp][xq], ey(j)), oy, n);
      }
      if (pp == C && pq == W) {
        const auto [yp, xq] = w_pair(j);
        o = padded(fld, out.w.pure(d.y.left_act(c->basis_vector(i), ey(yp)), ex(xq)), ow, n);
      }
      if (pp == W && pq == C) {
        const auto [yp, xq] = w_pair(i);
        o = padded(fld, out.w.pure(ey(yp), d.x.right_act(ex(xq), c->basis_vector(j))), ow, n);
      }
      if (pp == W && pq == W) {
        const auto [yp, xq] = w_pair(i);
        const auto [yr, xs] = w_pair(j);
        o = padded(fld, out.w.pure(ey(yp), d.x.left_act(fxy(ex(xq), ey(yr)), ex(xs))), ow, n);
      }
    }
  }
  std::vector<std::string> labels;
  for (const auto& l : a->labels()) labels.push_back("A." + l);
  for (std::size_t i = 0; i < dx; ++i) labels.push_back("X." + std::to_string(i));
  for (std::size_t i = 0; i < dy; ++i) labels.push_back("Y." + std::to_string(i));
  for (const auto& l : c->labels()) labels.push_back("C." + l);
  for (std::size_t k = 0; k < dw; ++k) labels.push_back("W." + std::to_string(k));
  Vector unit = padded(fld, a->unit(), 0, n);
  for (std::size_t i = 0; i < dc; ++i) unit[oc + i] = c->unit()[i];
  out.algebra = Algebra::make(fld, labels, mult, unit);

  out.collapse = Matrix(fld, n, ow);
  for (std::size_t p = 0; p < ow; ++p) out.collapse(p, p) = fld.one();
  for (std::size_t k = 0; k < dw; ++k) {
    const auto [yp, xq] = w_pair(k);
    out.collapse.set_row(ow + k, padded(fld, d.g[yp][xq], oc, ow));
  }
  out.beta = Matrix(fld, ow, n);
  for (std::size_t p = 0; p < ow; ++p) out.beta(p, p) = fld.one();
  return out;
}

BlockOracle nc_tensor_pure_oracle(const PureContext& pc) {
  const Algebra& m = *pc.ring;
  const Field& fld = m.field();
  const std::size_t dr = pc.context.r()->dim();
  const std::size_t dx = pc.x_basis.size();
  const std::size_t dy = pc.y_basis.size();
  const std::size_t oy = dr + dx, ow = oy + dy;

  // Y as a right and X as a left R-module, read off inside M.
  std::vector<Matrix> y_act, x_act;
  for (std::size_t r = 0; r < dr; ++r) {
    Matrix ya(fld, dy, dy);
    for (std::size_t p = 0; p < dy; ++p) ya.set_row(p, slice(dense(m, m.product(oy + p, r)), oy, dy));
    y_act.push_back(std::move(ya));
    Matrix xa(fld, dx, dx);
    for (std::size_t q = 0; q < dx; ++q) xa.set_row(q, slice(dense(m, m.product(r, dr + q)), dr, dx));
    x_act.push_back(std::move(xa));
  }
  const AlgebraPtr& r_alg = pc.context.r();
  BlockOracle out;
  out.w = tensor_over(Module::trusted(r_alg, Side::Right, dy, y_act), Module::trusted(r_alg, Side::Left, dx, x_act));
  out.offset_w = ow;
  const std::size_t dw = out.w.dim();
  const std::size_t n = ow + dw;
  auto w_pair = [&](std::size_t k) {
    const std::size_t amb = out.w.quotient.basis_coordinates[k];
    return std::make_pair(amb / dx, amb % dx);
  };
  // y-part and x-part of an element of M.
  auto y_of = [&](const Vector& v) { return slice(v, oy, dy); };
  auto x_of = [&](const Vector& v) { return slice(v, dr, dx); };
  auto e = [&](std::size_t i) { return m.basis_vector(i); };

  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n, zero_vector(fld, n)));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      Vector& o = mult[p][q];
      const bool pw = p >= ow, qw = q >= ow;
      if (!pw && !qw) {
        if (p >= oy && q >= dr && q < oy) {
          o = padded(fld, out.w.pure(unit_vector(fld, dy, p - oy), unit_vector(fld, dx, q - dr)), ow, n);
        } else {
          o = padded(fld, dense(m, m.product(p, q)), 0, n);
        }
      } else if (!pw && qw) {
        // r (y (x) x) = (r y) (x) x and y' (y (x) x) = (y' y) (x) x; X kills W.
        if (p < dr || p >= oy) {
          const auto [yp, xq] = w_pair(q - ow);
          const Vector ry = y_of(m.multiply(e(p), e(oy + yp)));
          o = padded(fld, out.w.pure(ry, unit_vector(fld, dx, xq)), ow, n);
        }
      } else if (pw && !qw) {
        // (y (x) x) r = y (x) (x r) and (y (x) x) x' = y (x) (x x'); W kills Y.
        if (q < oy) {
          const auto [yp, xq] = w_pair(p - ow);
          const Vector xr = x_of(m.multiply(e(dr + xq), e(q)));
          o = padded(fld, out.w.pure(unit_vector(fld, dy, yp), xr), ow, n);
        }
      }
    }
  }
  std::vector<std::string> labels = m.labels();
  for (std::size_t k = 0; k < dw; ++k) labels.push_back("W." + std::to_string(k));
  out.algebra = Algebra::make(fld, labels, mult, padded(fld, m.unit(), 0, n));

  out.collapse = Matrix(fld, n, ow);
  for (std::size_t p = 0; p < ow; ++p) out.collapse(p, p) = fld.one();
  out.beta = Matrix(fld, ow, n);
  for (std::size_t p = 0; p < ow; ++p) out.beta(p, p) = fld.one();
  return out;
}

CollapseReport verify_collapse(const BlockOracle& oracle, const AlgebraPtr& base) {
  CollapseReport rep;
  rep.morphism = check_morphism(oracle.algebra, base, oracle.collapse).ok;
  rep.section = oracle.beta * oracle.collapse == Matrix::identity(base->field(), base->dim());
  rep.beta_multiplicative = check_morphism(base, oracle.algebra, oracle.beta).ok;
  rep.w_zero = oracle.w.dim() == 0;
  return rep;
}

namespace {

Matrix identification(const NcTensorRing& ring, const BlockOracle& oracle, const Matrix& t_into, const Matrix& s_into) {
  const Field& f = ring.context.field();
  const std::size_t ds = ring.context.s()->dim();
  const std::size_t n = oracle.algebra->dim();
  Matrix psi(f, ring.dim(), n);
  const auto& coord = ring.tensor.tensor.quotient.basis_coordinates;
  for (std::size_t i = 0; i < ring.dim(); ++i) {
    const Vector t = padded(f, t_into.row(coord[i] / ds), 0, n);
    const Vector s = padded(f, s_into.row(coord[i] % ds), 0, n);
    psi.set_row(i, oracle.algebra->multiply(t, s));
  }
  return psi;
}

}  // namespace

Matrix morita_identification(const MoritaContext& mc, const NcTensorRing& ring, const BlockOracle& oracle) {
  return identification(ring, oracle, mc.t.inclusion.matrix(), mc.s.inclusion.matrix());
}

Matrix pure_identification(const PureContext& pc, const NcTensorRing& ring, const BlockOracle& oracle) {
  return identification(ring, oracle, pc.into_t.matrix(), pc.into_s.matrix());
}

OracleComparison compare_structure(const AlgebraPtr& ring, const AlgebraPtr& target, const Matrix& psi) {
  OracleComparison out;
  out.bijective = ring->dim() == target->dim() && rank(psi) == ring->dim();
  out.structure_equal = vec_mat(ring->unit(), psi) == target->unit();
  if (!out.structure_equal) out.first_difference = std::make_pair(ring->dim(), ring->dim());
  for (std::size_t i = 0; i < ring->dim() && out.structure_equal; ++i) {
    for (std::size_t j = 0; j < ring->dim(); ++j) {
      if (vec_mat(dense(*ring, ring->product(i, j)), psi) != target->multiply(psi.row(i), psi.row(j))) {
        out.structure_equal = false;
        out.first_difference = std::make_pair(i, j);
        break;
      }
    }
  }
  return out;
}

// -------------------------------------------------------------------- theta

ThetaData build_theta(const NcTensorRing& ring) {
  const ExactContext& ctx = ring.context;
  const Field& f = ctx.field();
  const std::size_t ds = ctx.s()->dim();
  const std::size_t dm = ctx.bimodule.dim();
  const std::size_t dt = ctx.t()->dim();
  const std::size_t dq = ring.dim();
  ThetaData td;
  td.ring = ring;
  td.b = triangular_algebra(ctx.bimodule);
  td.c = matrix_algebra(ring.algebra, 2);
  const std::size_t dc = td.c->dim();
  Matrix theta(f, td.b.algebra->dim(), dc);
  for (std::size_t i = 0; i < ds; ++i) theta.set_row(i, padded(f, ring.rho.image_of_basis(i), matrix_index(2, dq, 0, 0, 0), dc));
  for (std::size_t k = 0; k < dm; ++k) theta.set_row(ds + k, padded(f, ring.beta.row(k), matrix_index(2, dq, 0, 1, 0), dc));
  for (std::size_t j = 0; j < dt; ++j) {
    theta.set_row(ds + dm + j, padded(f, ring.phi.image_of_basis(j), matrix_index(2, dq, 1, 1, 0), dc));
  }
  td.theta = consistent("theta", [&] { return AlgebraMorphism(td.b.algebra, td.c, theta); });
  td.e1 = td.b.e1;
  td.e2 = td.b.e2;
  td.carrier = td.b.embed(ctx.s()->zero(), ctx.m, ctx.t()->zero());
  td.phi_b = Matrix(f, ds, dm + dt);
  for (std::size_t i = 0; i < ds; ++i) {
    td.phi_b.set_row(i, slice(td.b.algebra->multiply(td.b.algebra->basis_vector(i), td.carrier), ds, dm + dt));
  }
  return td;
}

LocalizationReport verify_localization_properties(const ThetaData& td, std::size_t tor_bound) {
  const NcTensorRing& ring = td.ring;
  const ExactContext& ctx = ring.context;
  const Field& f = ctx.field();
  LocalizationReport rep;
  rep.epi = is_ring_epimorphism(td.theta);

  const Module c_right = restrict_module(Module::regular(td.c, Side::Right), td.theta);
  const Module c_left = restrict_module(Module::regular(td.c, Side::Left), td.theta);
  rep.tor_dims = tor(c_right, c_left, std::max<std::size_t>(1, tor_bound)).dims;
  rep.tor1_vanishes = rep.tor_dims.at(1) == 0;

  // C (x)_B B e1 -> C (x)_B B e2 induced by s -> s m.
  const std::size_t ds = ctx.s()->dim();
  const std::size_t db = td.b.algebra->dim();
  const Module b_left = Module::regular(td.b.algebra, Side::Left);
  std::vector<Vector> e1_span, e2_span;
  for (std::size_t i = 0; i < db; ++i) (i < ds ? e1_span : e2_span).push_back(unit_vector(f, db, i));
  const Submodule be1 = submodule(b_left, e1_span);
  const Submodule be2 = submodule(b_left, e2_span);
  const TensorProduct t1 = tensor_over(c_right, be1.module);
  const TensorProduct t2 = tensor_over(c_right, be2.module);
  const Matrix induced = t1.quotient.section * kronecker(Matrix::identity(f, td.c->dim()), td.phi_b) * t2.quotient.projection;
  rep.sigma_source_dim = t1.dim();
  rep.sigma_target_dim = t2.dim();
  rep.sigma_rank = rank(induced);
  rep.sigma_inverting = rep.sigma_source_dim == rep.sigma_target_dim && rep.sigma_rank == rep.sigma_source_dim;

  // a_m = 1, additivity, a_{sm} a_x = a_{sx}, a_x a_{mt} = a_{xt} with a = beta.
  const Algebra& q = *ring.algebra;
  const Matrix& beta = ring.beta;
  const std::size_t dm = ctx.bimodule.dim();
  auto fail = [&](const std::string& why) {
    if (rep.sheiham_failure.empty()) rep.sheiham_failure = why;
  };
  if (vec_mat(ctx.m, beta) != q.unit()) fail("a_m != 1");
  for (std::size_t k = 0; k < dm; ++k) {
    for (std::size_t l = 0; l < dm; ++l) {
      if (vec_mat(add(unit_vector(f, dm, k), unit_vector(f, dm, l)), beta) != add(beta.row(k), beta.row(l))) {
        fail("additivity on (" + std::to_string(k) + ", " + std::to_string(l) + ")");
      }
    }
    for (std::size_t i = 0; i < ds; ++i) {
      const Vector sm = vec_mat(ctx.s_times_m.row(i), beta);
      if (q.multiply(sm, beta.row(k)) != vec_mat(ctx.bimodule.left_actions()[i].row(k), beta)) {
        fail("a_{sm} a_x != a_{sx} on (" + std::to_string(i) + ", " + std::to_string(k) + ")");
      }
    }
    for (std::size_t j = 0; j < ctx.t()->dim(); ++j) {
      const Vector mt = vec_mat(ctx.m_times_t.row(j), beta);
      if (q.multiply(beta.row(k), mt) != vec_mat(ctx.bimodule.right_actions()[j].row(k), beta)) {
        fail("a_x a_{mt} != a_{xt} on (" + std::to_string(k) + ", " + std::to_string(j) + ")");
      }
    }
  }
  rep.sheiham = rep.sheiham_failure.empty();
  return rep;
}

Theorem1Verdict theorem1_criterion(const ThetaData& td, std::size_t bound) {
  const ExactContext& ctx = td.ring.context;
  Theorem1Verdict v;
  v.bound = bound;
  v.tor_dims = tor_until_nonzero(regular_restricted(ctx.mu, Side::Right), regular_restricted(ctx.lambda, Side::Left), bound).dims;
  v.holds = true;
  for (std::size_t i = 1; i < v.tor_dims.size(); ++i) {
    if (v.tor_dims[i] != 0) {
      v.holds = false;
      v.failing_degree = i;
      v.failing_dim = v.tor_dims[i];
      break;
    }
  }
  v.theta = is_homological_up_to(td.theta, bound);
  if (v.theta.holds != v.holds) {
    throw Error(ErrorCode::InternalInconsistency,
                std::string("Tor criterion ") + (v.holds ? "holds" : "fails") + " but theta is " + (v.theta.holds ? "" : "not ") +
                    "homological up to the bound",
                {bound});
  }
  return v;
}

Theorem1Verdict theorem1_criterion(const ExactContext& ctx, std::size_t bound) {
  return theorem1_criterion(build_theta(build_nc_tensor(ctx)), bound);
}

CoincidenceReport commutative_coincidence_check(const NcTensorRing& ring) {
  const ExactContext& ctx = ring.context;
  const Algebra& r = *ctx.r();
  const Algebra& s = *ctx.s();
  const Algebra& t = *ctx.t();
  if (!r.is_commutative()) throw Error(ErrorCode::PreconditionFailed, "R is not commutative");
  auto central = [&](const Algebra& a, const AlgebraMorphism& f) {
    for (std::size_t i = 0; i < r.dim(); ++i) {
      const Vector z = f.image_of_basis(i);
      for (std::size_t j = 0; j < a.dim(); ++j) {
        if (a.multiply(z, a.basis_vector(j)) != a.multiply(a.basis_vector(j), z)) return false;
      }
    }
    return true;
  };
  if (!central(s, ctx.lambda)) throw Error(ErrorCode::PreconditionFailed, "the image of lambda is not central in S");
  if (!central(t, ctx.mu)) throw Error(ErrorCode::PreconditionFailed, "the image of mu is not central in T");
  if (!is_exact_pair(ctx).holds) throw Error(ErrorCode::PreconditionFailed, "the pair is not exact");

  const TensorProduct& tp = ring.tensor.tensor;
  const std::size_t ds = s.dim();
  const auto& coord = tp.quotient.basis_coordinates;
  CoincidenceReport rep;
  rep.equal = true;
  for (std::size_t i = 0; i < ring.dim() && rep.equal; ++i) {
    for (std::size_t j = 0; j < ring.dim(); ++j) {
      const Vector tt = dense(t, t.product(coord[i] / ds, coord[j] / ds));
      const Vector ss = dense(s, s.product(coord[i] % ds, coord[j] % ds));
      if (tp.pure(tt, ss) != dense(*ring.algebra, ring.algebra->product(i, j))) {
        rep.equal = false;
        rep.first_difference = std::make_pair(i, j);
        break;
      }
    }
  }
  return rep;
}

PdReport pd_inequality_check(const ThetaData& td, std::size_t bound) {
  const ExactContext& ctx = td.ring.context;
  const Module t_r = regular_restricted(ctx.mu, Side::Right);
  const Module r_s = regular_restricted(ctx.lambda, Side::Left);
  const TorResult tr = tor_until_nonzero(t_r, r_s, bound);
  for (std::size_t i = 1; i < tr.dims.size(); ++i) {
    if (tr.dims[i] != 0) throw Error(ErrorCode::PreconditionFailed, "Tor_i^R(T, S) does not vanish", {i, tr.dims[i]});
  }
  PdReport rep;
  rep.pd_rs = projective_dimension(r_s, bound);
  rep.pd_tr = projective_dimension(t_r, bound);
  rep.pd_bc = projective_dimension(restrict_module(Module::regular(td.c, Side::Left), td.theta), bound);
  rep.pd_cb = projective_dimension(restrict_module(Module::regular(td.c, Side::Right), td.theta), bound);
  for (const auto* pd : {&rep.pd_rs, &rep.pd_tr, &rep.pd_bc, &rep.pd_cb}) {
    if (!pd->value) throw Error(ErrorCode::Inconclusive, "a projective dimension exceeds the bound " + std::to_string(bound), {bound});
  }
  auto holds = [](std::size_t small, std::size_t big) {
    return small <= std::max<std::size_t>(1, big) && big <= std::max<std::size_t>(2, small + 1);
  };
  rep.left_ok = holds(*rep.pd_rs.value, *rep.pd_bc.value);
  rep.right_ok = holds(*rep.pd_tr.value, *rep.pd_cb.value);
  return rep;
}

EndTReport end_t_check(const NcTensorRing& ring) {
  EndTReport rep;
  rep.ring_epi = is_ring_epimorphism(ring.context.lambda).holds;
  const EndAlgebra end = end_algebra(ring.tensor.bimodule.as_left());
  rep.end_dim = end.algebra->dim();
  const Field& f = ring.context.field();
  Matrix map(f, ring.dim(), rep.end_dim);
  bool linear = true;
  for (std::size_t i = 0; i < ring.dim() && linear; ++i) {
    auto c = end.hom.coordinates(ring.algebra->right_mult_basis(i));
    if (!c) {
      linear = false;
      break;
    }
    map.set_row(i, *c);
  }
  if (!linear) throw Error(ErrorCode::InternalInconsistency, "right multiplication is not T-linear");
  rep.isomorphic = rep.end_dim == ring.dim() && rank(map) == ring.dim() && check_morphism(ring.algebra, end.algebra, map).ok;
  if (rep.ring_epi && !rep.isomorphic) {
    throw Error(ErrorCode::InternalInconsistency, "lambda is a ring epimorphism but the ring is not End_T(T (x)_R S)");
  }
  return rep;
}

}  // namespace excon
