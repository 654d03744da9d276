#include "excon/module.hpp"

#include "excon/error.hpp"

namespace excon {

std::string to_string(Side s) { return s == Side::Left ? "left" : "right"; }

namespace {

void require_same(const Module& a, const Module& b) {
  if (a.algebra() != b.algebra() && !(a.algebra()->dim() == b.algebra()->dim() && same_structure(*a.algebra(), *b.algebra()))) {
    throw Error(ErrorCode::AlgebraMismatch, "modules are over different algebras");
  }
  if (a.side() != b.side()) throw Error(ErrorCode::AlgebraMismatch, "modules have different sides");
}

Matrix combine(const Field& f, std::size_t dim, const std::vector<Matrix>& mats, const SparseVector& coeffs) {
  Matrix out(f, dim, dim);
  for (const auto& [k, c] : coeffs) out.add_scaled(c, mats[k]);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Module

Module Module::trusted(AlgebraPtr algebra, Side side, std::size_t dim, std::vector<Matrix> action) {
  Module m;
  m.algebra_ = std::move(algebra);
  m.side_ = side;
  m.dim_ = dim;
  m.action_ = std::move(action);
  if (m.action_.size() != m.algebra_->dim()) throw Error(ErrorCode::InvalidModule, "one action matrix per algebra basis element is required");
  for (const auto& a : m.action_) {
    if (a.rows() != dim || a.cols() != dim) throw Error(ErrorCode::InvalidModule, "action matrix has the wrong shape");
  }
  return m;
}

Module Module::make(AlgebraPtr algebra, Side side, std::size_t dim, std::vector<Matrix> action) {
  Module m = trusted(std::move(algebra), side, dim, std::move(action));
  if (auto fail = m.find_failure()) throw Error(ErrorCode::InvalidModule, fail->first, fail->second);
  return m;
}

std::optional<std::pair<std::string, std::vector<std::size_t>>> Module::find_failure() const {
  const Algebra& a = *algebra_;
  const Field& f = a.field();
  Matrix unit(f, dim_, dim_);
  for (std::size_t k = 0; k < a.dim(); ++k) unit.add_scaled(a.unit()[k], action_[k]);
  if (unit != Matrix::identity(f, dim_)) return std::make_pair(std::string("the unit does not act as the identity"), std::vector<std::size_t>{});
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Matrix lhs = side_ == Side::Left ? action_[j] * action_[i] : action_[i] * action_[j];
      if (lhs != combine(f, dim_, action_, a.product(i, j))) {
        return std::make_pair(to_string(side_) + " action is not compatible with the product of basis elements " +
                                  std::to_string(i) + " and " + std::to_string(j),
                              std::vector<std::size_t>{i, j});
      }
    }
  }
  return std::nullopt;
}

Module Module::regular(const AlgebraPtr& a, Side side) {
  std::vector<Matrix> act;
  act.reserve(a->dim());
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(side == Side::Left ? a->left_mult_basis(i) : a->right_mult_basis(i));
  return trusted(a, side, a->dim(), std::move(act));
}

Module Module::free(const AlgebraPtr& a, Side side, std::size_t n) {
  const std::size_t d = a->dim();
  std::vector<Matrix> act;
  act.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix one = side == Side::Left ? a->left_mult_basis(i) : a->right_mult_basis(i);
    Matrix m(a->field(), n * d, n * d);
    for (std::size_t j = 0; j < n; ++j) m.set_block(j * d, j * d, one);
    act.push_back(std::move(m));
  }
  return trusted(a, side, n * d, std::move(act));
}

Module Module::zero(const AlgebraPtr& a, Side side) {
  return trusted(a, side, 0, std::vector<Matrix>(a->dim(), Matrix(a->field(), 0, 0)));
}

Matrix Module::action_of(const Vector& a) const {
  if (a.size() != algebra_->dim()) throw Error(ErrorCode::DimensionMismatch, "algebra element length mismatch");
  Matrix out(field(), dim_, dim_);
  for (std::size_t k = 0; k < a.size(); ++k) out.add_scaled(a[k], action_[k]);
  return out;
}

Module restrict_module(const Module& m, const AlgebraMorphism& f) {
  if (f.target()->dim() != m.algebra()->dim()) throw Error(ErrorCode::AlgebraMismatch, "restriction along a morphism into a different algebra");
  std::vector<Matrix> act;
  act.reserve(f.source()->dim());
  for (std::size_t i = 0; i < f.source()->dim(); ++i) act.push_back(m.action_of(f.image_of_basis(i)));
  return Module::trusted(f.source(), m.side(), m.dim(), std::move(act));
}

Module as_opposite(const Module& m, const AlgebraPtr& opposite_algebra) {
  return Module::trusted(opposite_algebra, m.side() == Side::Left ? Side::Right : Side::Left, m.dim(), m.actions());
}

Module direct_sum(const Module& x, const Module& y) {
  require_same(x, y);
  std::vector<Matrix> act;
  act.reserve(x.actions().size());
  for (std::size_t i = 0; i < x.actions().size(); ++i) act.push_back(block_diagonal(x.action(i), y.action(i)));
  return Module::trusted(x.algebra(), x.side(), x.dim() + y.dim(), std::move(act));
}

Subspace generated_submodule(const Module& x, const std::vector<Vector>& generators) {
  std::vector<Vector> span;
  for (const auto& g : generators) {
    for (std::size_t k = 0; k < x.actions().size(); ++k) span.push_back(x.act_basis(k, g));
  }
  return Subspace(x.field(), x.dim(), span);
}

std::vector<Vector> greedy_generators(const Module& x, const std::vector<Vector>& span) {
  EchelonBasis sub(x.field(), x.dim());
  std::vector<Vector> gens;
  for (const auto& v : span) {
    if (sub.rank() == x.dim()) break;
    if (sub.contains(v)) continue;
    gens.push_back(v);
    for (std::size_t k = 0; k < x.actions().size(); ++k) sub.insert(x.act_basis(k, v));
  }
  return gens;
}

std::vector<Vector> greedy_generators(const Module& x) {
  std::vector<Vector> basis;
  basis.reserve(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) basis.push_back(unit_vector(x.field(), x.dim(), i));
  return greedy_generators(x, basis);
}

QuotientModule quotient_module(const Module& x, const std::vector<Vector>& sub) {
  Subspace span(x.field(), x.dim(), sub);
  for (std::size_t i = 0; i < span.dim(); ++i) {
    for (std::size_t k = 0; k < x.actions().size(); ++k) {
      if (!span.contains(x.act_basis(k, span.basis()[i]))) {
        throw Error(ErrorCode::NotStable, "subspace is not stable under the action of basis element " + std::to_string(k), {i, k});
      }
    }
  }
  QuotientPresentation q = quotient_space(x.field(), x.dim(), span.basis());
  std::vector<Matrix> act;
  act.reserve(x.actions().size());
  for (const auto& a : x.actions()) act.push_back(q.section * a * q.projection);
  return QuotientModule{Module::trusted(x.algebra(), x.side(), q.dim, std::move(act)), std::move(q)};
}

Submodule submodule(const Module& x, const std::vector<Vector>& spanning) {
  Subspace span(x.field(), x.dim(), spanning);
  std::vector<Matrix> act;
  act.reserve(x.actions().size());
  const std::size_t d = span.dim();
  for (std::size_t k = 0; k < x.actions().size(); ++k) {
    Matrix m(x.field(), d, d);
    for (std::size_t i = 0; i < d; ++i) {
      auto c = span.coordinates(x.act_basis(k, span.basis()[i]));
      if (!c) throw Error(ErrorCode::NotStable, "spanned subspace is not a submodule", {i, k});
      m.set_row(i, *c);
    }
    act.push_back(std::move(m));
  }
  return Submodule{Module::trusted(x.algebra(), x.side(), d, std::move(act)), std::move(span)};
}

// ---------------------------------------------------------------- Bimodule

Bimodule Bimodule::trusted(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                           std::vector<Matrix> right_action) {
  if (left->field() != right->field()) throw Error(ErrorCode::FieldMismatch, "bimodule over algebras with different fields");
  Bimodule b;
  b.left_ = std::move(left);
  b.right_ = std::move(right);
  b.dim_ = dim;
  b.lact_ = std::move(left_action);
  b.ract_ = std::move(right_action);
  if (b.lact_.size() != b.left_->dim() || b.ract_.size() != b.right_->dim()) {
    throw Error(ErrorCode::InvalidBimodule, "one action matrix per algebra basis element is required");
  }
  for (const auto* acts : {&b.lact_, &b.ract_}) {
    for (const auto& a : *acts) {
      if (a.rows() != dim || a.cols() != dim) throw Error(ErrorCode::InvalidBimodule, "action matrix has the wrong shape");
    }
  }
  return b;
}

Bimodule Bimodule::make(AlgebraPtr left, AlgebraPtr right, std::size_t dim, std::vector<Matrix> left_action,
                        std::vector<Matrix> right_action) {
  Bimodule b = trusted(std::move(left), std::move(right), dim, std::move(left_action), std::move(right_action));
  BimoduleReport rep = check_bimodule(b);
  if (!rep.ok) throw Error(ErrorCode::InvalidBimodule, rep.detail, rep.witness);
  return b;
}

Bimodule Bimodule::regular(const AlgebraPtr& a) {
  Module l = Module::regular(a, Side::Left);
  Module r = Module::regular(a, Side::Right);
  return trusted(a, a, a->dim(), l.actions(), r.actions());
}

Vector Bimodule::left_act(const Vector& s, const Vector& x) const {
  Vector out = zero_vector(field(), dim_);
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (!s[k].is_zero()) axpy(out, s[k], vec_mat(x, lact_[k]));
  }
  return out;
}

Vector Bimodule::right_act(const Vector& x, const Vector& t) const {
  Vector out = zero_vector(field(), dim_);
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (!t[k].is_zero()) axpy(out, t[k], vec_mat(x, ract_[k]));
  }
  return out;
}

Bimodule restrict_bimodule(const Bimodule& m, const AlgebraMorphism& f, const AlgebraMorphism& g) {
  Module l = restrict_module(m.as_left(), f);
  Module r = restrict_module(m.as_right(), g);
  return Bimodule::trusted(f.source(), g.source(), m.dim(), l.actions(), r.actions());
}

BimoduleReport check_bimodule(const Bimodule& b) {
  BimoduleReport rep;
  if (auto fail = b.as_left().find_failure()) {
    rep.ok = false;
    rep.failure = "left";
    rep.detail = fail->first;
    rep.witness = fail->second;
    return rep;
  }
  if (auto fail = b.as_right().find_failure()) {
    rep.ok = false;
    rep.failure = "right";
    rep.detail = fail->first;
    rep.witness = fail->second;
    return rep;
  }
  for (std::size_t i = 0; i < b.left_actions().size(); ++i) {
    for (std::size_t j = 0; j < b.right_actions().size(); ++j) {
      const Matrix& l = b.left_actions()[i];
      const Matrix& r = b.right_actions()[j];
      if (l * r != r * l) {
        rep.ok = false;
        rep.failure = "commuting";
        rep.witness = {i, j};
        rep.detail = "left action of basis element " + std::to_string(i) + " does not commute with right action of basis element " +
                     std::to_string(j);
        return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- Hom

bool is_module_map(const Module& y, const Module& x, const Matrix& f) {
  if (f.rows() != y.dim() || f.cols() != x.dim()) return false;
  for (std::size_t i = 0; i < y.actions().size(); ++i) {
    if (y.action(i) * f != f * x.action(i)) return false;
  }
  return true;
}

HomSpace::HomSpace(Module source, Module target, std::vector<Matrix> basis)
    : source_(std::move(source)), target_(std::move(target)), basis_(std::move(basis)) {
  auto span = std::make_shared<EchelonBasis>(source_.field(), source_.dim() * target_.dim(), true);
  for (const auto& b : basis_) {
    if (!span->insert(flatten(b))) throw Error(ErrorCode::InternalInconsistency, "Hom basis is linearly dependent");
  }
  span_ = std::move(span);
}

std::optional<Vector> HomSpace::coordinates(const Matrix& f) const {
  if (f.rows() != source_.dim() || f.cols() != target_.dim()) return std::nullopt;
  return span_->express(flatten(f));
}

Matrix HomSpace::element(const Vector& coords) const {
  Matrix out(source_.field(), source_.dim(), target_.dim());
  for (std::size_t i = 0; i < basis_.size(); ++i) out.add_scaled(coords.at(i), basis_[i]);
  return out;
}

HomSpace hom_space(const Module& y, const Module& x) {
  require_same(y, x);
  const Field& f = y.field();
  const AlgebraPtr& alg = y.algebra();
  const std::size_t da = alg->dim();
  const std::size_t dy = y.dim();
  const std::size_t dx = x.dim();
  if (dy == 0 || dx == 0) return HomSpace(y, x, {});

  // Present y as a quotient of A^n through greedy generators g_j; a map is
  // determined by the images of the g_j subject to the kernel relations.
  std::vector<Vector> gens = greedy_generators(y);
  const std::size_t n = gens.size();
  Module free = Module::free(alg, y.side(), n);
  Matrix cover(f, n * da, dy);  // row (j, k) = b_k acting on g_j
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < da; ++k) cover.set_row(j * da + k, y.act_basis(k, gens[j]));
  }
  // Preimage in A^n of every basis vector of y.
  EchelonBasis image(f, dy, true);
  std::vector<std::size_t> accepted;
  for (std::size_t r = 0; r < cover.rows(); ++r) {
    if (image.insert(cover.row(r))) accepted.push_back(r);
  }
  std::vector<Vector> preimage(dy, zero_vector(f, n * da));
  for (std::size_t i = 0; i < dy; ++i) {
    auto c = image.express(unit_vector(f, dy, i));
    if (!c) throw Error(ErrorCode::InternalInconsistency, "generators do not span the module");
    for (std::size_t a = 0; a < accepted.size(); ++a) preimage[i][accepted[a]] = (*c)[a];
  }
  std::vector<Vector> relations = greedy_generators(free, left_kernel(cover));

  // Unknowns u = (y_1, ..., y_n) in x^n; each relation kappa demands
  // sum_j kappa_j acting on y_j = 0, i.e. u * E = 0.
  Matrix eq(f, n * dx, relations.size() * dx);
  for (std::size_t r = 0; r < relations.size(); ++r) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector kj(relations[r].begin() + static_cast<std::ptrdiff_t>(j * da),
                relations[r].begin() + static_cast<std::ptrdiff_t>((j + 1) * da));
      if (is_zero(kj)) continue;
      eq.set_block(j * dx, r * dx, x.action_of(kj));
    }
  }
  std::vector<Vector> solutions = left_kernel(eq);

  // Phi sends u to the flattened map: row i of F is sum_j (preimage_ij acting on y_j).
  Matrix phi(f, n * dx, dy * dx);
  for (std::size_t i = 0; i < dy; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector a(preimage[i].begin() + static_cast<std::ptrdiff_t>(j * da),
               preimage[i].begin() + static_cast<std::ptrdiff_t>((j + 1) * da));
      if (is_zero(a)) continue;
      phi.set_block(j * dx, i * dx, x.action_of(a));
    }
  }
  std::vector<Matrix> basis;
  basis.reserve(solutions.size());
  for (const auto& u : solutions) basis.push_back(unflatten(f, vec_mat(u, phi), dy, dx));
  return HomSpace(y, x, std::move(basis));
}

EndAlgebra end_algebra(const Module& x) {
  HomSpace h = hom_space(x, x);
  const Field& f = x.field();
  const std::size_t d = h.dim();
  std::vector<SparseVector> mult(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      auto c = h.coordinates(h.basis()[i] * h.basis()[j]);
      if (!c) throw Error(ErrorCode::InternalInconsistency, "endomorphisms not closed under composition", {i, j});
      mult[i * d + j] = to_sparse(*c);
    }
  }
  Vector unit;
  if (d > 0) {
    auto u = h.coordinates(Matrix::identity(f, x.dim()));
    if (!u) throw Error(ErrorCode::InternalInconsistency, "identity is not an endomorphism");
    unit = *u;
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < d; ++i) labels.push_back("h" + std::to_string(i));
  return EndAlgebra{Algebra::make_trusted(f, std::move(labels), std::move(mult), std::move(unit)), std::move(h)};
}

// ---------------------------------------------------------------- tensor

Vector TensorProduct::pure(const Vector& t, const Vector& s) const {
  const Field& f = quotient.projection.field();
  Vector amb(dim_t * dim_s, f.zero());
  for (std::size_t a = 0; a < dim_t; ++a) {
    if (t[a].is_zero()) continue;
    for (std::size_t b = 0; b < dim_s; ++b) {
      if (!s[b].is_zero()) amb[a * dim_s + b] = t[a] * s[b];
    }
  }
  return quotient.project(amb);
}

TensorProduct tensor_over(const Module& t, const Module& s) {
  if (t.side() != Side::Right || s.side() != Side::Left) throw Error(ErrorCode::AlgebraMismatch, "tensor_over needs a right module and a left module");
  if (t.algebra() != s.algebra() && !same_structure(*t.algebra(), *s.algebra())) {
    throw Error(ErrorCode::AlgebraMismatch, "tensor factors are modules over different algebras");
  }
  const Field& f = t.field();
  const std::size_t dt = t.dim();
  const std::size_t ds = s.dim();
  // Relations for algebra generators imply those for all of R.
  std::vector<Vector> rels;
  for (std::size_t g : algebra_generators(*t.algebra())) {
    const Matrix& tg = t.action(g);
    const Matrix& sg = s.action(g);
    for (std::size_t a = 0; a < dt; ++a) {
      for (std::size_t b = 0; b < ds; ++b) {
        Vector rel(dt * ds, f.zero());
        for (std::size_t c = 0; c < dt; ++c) {
          if (!tg(a, c).is_zero()) rel[c * ds + b] += tg(a, c);
        }
        for (std::size_t d = 0; d < ds; ++d) {
          if (!sg(b, d).is_zero()) rel[a * ds + d] -= sg(b, d);
        }
        if (!is_zero(rel)) rels.push_back(std::move(rel));
      }
    }
  }
  return TensorProduct{dt, ds, quotient_space(f, dt * ds, rels)};
}

TensorBimodule tensor_bimodule(const Bimodule& x, const Bimodule& y) {
  TensorProduct tp = tensor_over(x.as_right(), y.as_left());
  const Field& f = x.field();
  const Matrix id_x = Matrix::identity(f, x.dim());
  const Matrix id_y = Matrix::identity(f, y.dim());
  const QuotientPresentation& q = tp.quotient;
  std::vector<Matrix> left;
  left.reserve(x.left_actions().size());
  for (const auto& a : x.left_actions()) left.push_back(q.section * kronecker(a, id_y) * q.projection);
  std::vector<Matrix> right;
  right.reserve(y.right_actions().size());
  for (const auto& c : y.right_actions()) right.push_back(q.section * kronecker(id_x, c) * q.projection);
  Bimodule b = Bimodule::trusted(x.left_algebra(), y.right_algebra(), tp.dim(), std::move(left), std::move(right));
  return TensorBimodule{std::move(b), std::move(tp)};
}

}  // namespace excon
