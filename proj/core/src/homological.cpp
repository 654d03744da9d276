#include "excon/homological.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include <gmpxx.h>

#include "excon/error.hpp"

namespace excon {

// ------------------------------------------------------------------ radical

std::vector<Vector> radical(const Algebra& a) {
  const Field& f = a.field();
  const std::size_t d = a.dim();
  if (!f.is_rational() && f.characteristic() <= d) {
    throw Error(ErrorCode::CharacteristicTooSmall,
                "trace-form radical needs characteristic 0 or p > dim (p = " + std::to_string(f.characteristic()) +
                    ", dim = " + std::to_string(d) + ")");
  }
  Vector trace(d, f.zero());  // trace[l] = tr(L_{b_l})
  for (std::size_t l = 0; l < d; ++l) {
    for (std::size_t m = 0; m < d; ++m) {
      for (const auto& [k, c] : a.product(l, m)) {
        if (k == m) trace[l] += c;
      }
    }
  }
  Matrix g(f, d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (const auto& [l, c] : a.product(i, j)) g(i, j) += c * trace[l];
    }
  }
  return Subspace(f, d, left_kernel(g)).basis();
}

// ------------------------------------------------------------ idempotents

namespace {

std::vector<mpz_class> divisors(const mpz_class& n) {
  std::vector<mpz_class> small;
  std::vector<mpz_class> large;
  for (mpz_class i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      small.push_back(i);
      if (i * i != n) large.push_back(n / i);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Scalar evaluate(const std::vector<Scalar>& poly, const Scalar& x) {
  Scalar acc = x - x;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// A root in the field of a polynomial (coefficients low to high), when one
/// can be found: brute force over small prime fields, the rational root test
/// over Q with moderate coefficients.
std::optional<Scalar> find_root(const Field& f, const std::vector<Scalar>& poly) {
  if (poly.empty()) return std::nullopt;
  if (poly.front().is_zero()) return f.zero();
  if (!f.is_rational()) {
    const std::uint32_t p = f.characteristic();
    if (p > 1000003u) return std::nullopt;
    for (std::uint32_t r = 1; r < p; ++r) {
      Scalar x = Scalar::residue(p, r);
      if (evaluate(poly, x).is_zero()) return x;
    }
    return std::nullopt;
  }
  mpz_class lcm = 1;
  for (const auto& c : poly) {
    mpq_class q = c.to_mpq();
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  }
  mpq_class front = poly.front().to_mpq() * lcm;
  mpq_class back = poly.back().to_mpq() * lcm;
  mpz_class a0 = front.get_num();
  mpz_class an = back.get_num();
  a0 = abs(a0);
  an = abs(an);
  const mpz_class limit("1000000000000");
  if (a0 > limit || an > limit) return std::nullopt;
  for (const auto& num : divisors(a0)) {
    for (const auto& den : divisors(an)) {
      for (int sign : {1, -1}) {
        Scalar x = f.from_rational(mpq_class(num * sign, den));
        if (evaluate(poly, x).is_zero()) return x;
      }
    }
  }
  return std::nullopt;
}

/// Minimal polynomial of u inside the corner with unit e (coefficients low to
/// high, monic).
std::vector<Scalar> minimal_polynomial(const Algebra& a, const Vector& e, const Vector& u) {
  const Field& f = a.field();
  EchelonBasis powers(f, a.dim(), true);
  Vector p = e;
  Matrix ru = a.right_mult_matrix(u);
  while (powers.insert(p)) p = vec_mat(p, ru);
  // p = sum c_i u^i, and the accepted vectors are exactly e, u, u^2, ...
  Vector coeffs = *powers.express(p);
  std::vector<Scalar> poly;
  for (const auto& c : coeffs) poly.push_back(-c);
  poly.push_back(f.one());
  return poly;
}

/// Splits e into primitive orthogonal idempotents of the semisimple algebra
/// a; nullopt when a corner has no zero divisor (not split).
bool split_idempotent(const Algebra& a, const Vector& e, std::vector<Vector>& out) {
  const Field& f = a.field();
  const std::size_t d = a.dim();
  Matrix ere = a.left_mult_matrix(e) * a.right_mult_matrix(e);  // row i = e b_i e
  Subspace corner(f, d, ere.row_list());
  if (corner.dim() <= 1) {
    out.push_back(e);
    return true;
  }
  Subspace scalars(f, d, {e});
  std::vector<Vector> candidates = corner.basis();
  for (const auto& r : ere.row_list()) candidates.push_back(r);

  std::optional<Vector> zero_divisor;
  for (const auto& u : candidates) {
    if (scalars.contains(u)) continue;
    Matrix lu = a.left_mult_matrix(u);
    std::vector<Vector> images;
    for (const auto& c : corner.basis()) images.push_back(vec_mat(c, lu));
    if (Subspace(f, d, images).dim() < corner.dim()) {
      zero_divisor = u;
      break;
    }
  }
  if (!zero_divisor) {
    for (const auto& u : candidates) {
      if (scalars.contains(u)) continue;
      if (auto root = find_root(f, minimal_polynomial(a, e, u))) {
        zero_divisor = sub(u, scale(*root, e));
        break;
      }
    }
  }
  if (!zero_divisor) return false;

  // The right ideal z * corner is f * corner for an idempotent f, which is a
  // left identity on it.
  Matrix lz = a.left_mult_matrix(*zero_divisor);
  std::vector<Vector> gen;
  for (const auto& c : corner.basis()) gen.push_back(vec_mat(c, lz));
  std::vector<Vector> ideal = Subspace(f, d, gen).basis();
  const std::size_t m = ideal.size();
  Matrix system(f, m, m * d);
  Vector rhs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      Vector prod = a.multiply(ideal[i], ideal[j]);
      for (std::size_t k = 0; k < d; ++k) system(i, j * d + k) = prod[k];
    }
  }
  for (std::size_t j = 0; j < m; ++j) rhs.insert(rhs.end(), ideal[j].begin(), ideal[j].end());
  auto alpha = solve_left(system, rhs);
  if (!alpha) throw Error(ErrorCode::InternalInconsistency, "right ideal of a semisimple corner has no left identity");
  Vector idem = a.zero();
  for (std::size_t i = 0; i < m; ++i) axpy(idem, (*alpha)[i], ideal[i]);
  return split_idempotent(a, idem, out) && split_idempotent(a, sub(e, idem), out);
}

/// Lifts an idempotent modulo a nilpotent ideal: a -> 3a^2 - 2a^3.
Vector lift_idempotent(const Algebra& a, Vector x) {
  const Field& f = a.field();
  for (std::size_t iter = 0; iter < 64; ++iter) {
    Vector x2 = a.multiply(x, x);
    if (x2 == x) return x;
    Vector x3 = a.multiply(x2, x);
    x = sub(scale(f.from_int(3), x2), scale(f.from_int(2), x3));
  }
  throw Error(ErrorCode::InternalInconsistency, "idempotent lifting did not converge");
}

struct AlgebraCache {
  std::weak_ptr<const Algebra> owner;
  bool radical_done = false;
  std::optional<std::vector<Vector>> radical;  // nullopt: characteristic too small
  bool idempotents_done = false;
  std::shared_ptr<const IdempotentData> idempotents;
};

std::mutex cache_mutex;
std::map<const Algebra*, AlgebraCache>& cache() {
  static std::map<const Algebra*, AlgebraCache> c;
  return c;
}

AlgebraCache& cache_entry(const AlgebraPtr& a) {
  auto& c = cache();
  for (auto it = c.begin(); it != c.end();) {
    it = it->second.owner.expired() ? c.erase(it) : std::next(it);
  }
  auto& entry = c[a.get()];
  if (entry.owner.lock() != a) {
    entry = AlgebraCache{};
    entry.owner = a;
  }
  return entry;
}

const std::vector<Vector>* cached_radical(const AlgebraPtr& a) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& entry = cache_entry(a);
  if (!entry.radical_done) {
    try {
      entry.radical = radical(*a);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CharacteristicTooSmall) throw;
    }
    entry.radical_done = true;
  }
  return entry.radical ? &*entry.radical : nullptr;
}

std::shared_ptr<const IdempotentData> compute_idempotents(const AlgebraPtr& a, const std::vector<Vector>& rad) {
  const Field& f = a->field();
  QuotientAlgebra q = quotient_algebra(a, rad);
  const Algebra& ab = *q.algebra;
  std::vector<Vector> bars;
  if (ab.dim() > 0 && !split_idempotent(ab, ab.unit(), bars)) return nullptr;

  auto data = std::make_shared<IdempotentData>();
  data->radical = rad;
  const std::size_t r = bars.size();
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < r; ++i) {
    Matrix li = ab.left_mult_matrix(bars[i]);
    for (std::size_t j = i + 1; j < r; ++j) {
      if (!(li * ab.right_mult_matrix(bars[j])).is_zero()) parent[find(j)] = find(i);
    }
  }
  std::map<std::size_t, std::size_t> class_index;
  for (std::size_t i = 0; i < r; ++i) {
    auto [it, fresh] = class_index.emplace(find(i), class_index.size());
    data->class_of.push_back(it->second);
    if (fresh) data->representatives.push_back(i);
  }

  Vector used = a->zero();  // sum of the idempotents lifted so far
  for (std::size_t i = 0; i < r; ++i) {
    Vector e;
    if (i + 1 == r) {
      e = sub(a->unit(), used);
    } else {
      Vector rest = sub(a->unit(), used);
      Vector x = a->multiply(a->multiply(rest, q.presentation.lift(bars[i])), rest);
      e = lift_idempotent(*a, x);
    }
    used = add(used, e);
    data->primitive.push_back(std::move(e));
  }
  (void)f;
  return data;
}

}  // namespace

std::shared_ptr<const IdempotentData> primitive_idempotents(const AlgebraPtr& a) {
  const std::vector<Vector>* rad = cached_radical(a);
  if (!rad) return nullptr;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& entry = cache_entry(a);
  if (!entry.idempotents_done) {
    entry.idempotents = compute_idempotents(a, *rad);
    entry.idempotents_done = true;
  }
  return entry.idempotents;
}

// -------------------------------------------------------------- resolutions

namespace {

/// Basis of e A (right side) or A e (left side).
std::vector<Vector> summand_basis(const Algebra& a, Side side, const Vector& e) {
  Matrix m = side == Side::Right ? a.left_mult_matrix(e) : a.right_mult_matrix(e);
  return Subspace(a.field(), a.dim(), m.row_list()).basis();
}

/// Drives a resolution. Elements of A that act on syzygies are registered
/// once, with their multiplication matrix (componentwise action on A^n) and,
/// lazily, their action on the resolved module.
class Resolver {
 public:
  Resolver(const Module& x, bool minimal) : x_(x), a_(*x.algebra()), side_(x.side()), d_(a_.dim()), minimal_(minimal) {
    if (minimal_) {
      rad_ = cached_radical(x.algebra());
      if (!rad_) {
        throw Error(ErrorCode::CharacteristicTooSmall,
                    "minimal resolutions need the radical, which requires characteristic 0 or p > dim");
      }
      idem_ = primitive_idempotents(x.algebra());
    }
    if (idem_) {
      for (auto rep : idem_->representatives) {
        const Vector& e = idem_->primitive[rep];
        Summand s;
        s.idempotent = e;
        s.element = add_element(e);
        for (const auto& w : summand_basis(a_, side_, e)) s.basis.push_back(add_element(w));
        std::vector<Vector> je;
        for (const auto& r : *rad_) je.push_back(side_ == Side::Right ? a_.multiply(r, e) : a_.multiply(e, r));
        Subspace je_span(a_.field(), d_, je);
        for (const auto& w : je_span.basis()) s.radical_part.push_back(add_element(w));
        summands_.push_back(std::move(s));
      }
    } else {
      Summand s;
      s.idempotent = a_.unit();
      s.element = add_element(a_.unit());
      for (std::size_t k = 0; k < d_; ++k) s.basis.push_back(add_element(a_.basis_vector(k)));
      if (rad_) {
        for (const auto& r : *rad_) s.radical_part.push_back(add_element(r));
      }
      summands_.push_back(std::move(s));
    }
  }

  Resolution run(std::size_t length) {
    Resolution res;
    res.module = x_;
    res.kind = idem_ ? ResolutionKind::MinimalProjective : ResolutionKind::Free;
    std::vector<Vector> k;
    for (std::size_t i = 0; i < x_.dim(); ++i) k.push_back(unit_vector(a_.field(), x_.dim(), i));
    std::size_t space = x_.dim();
    if (k.empty()) {
      res.terminated = true;
      return res;
    }
    for (std::size_t deg = 0; deg <= length; ++deg) {
      const bool on_module = deg == 0;
      std::vector<std::pair<Vector, std::size_t>> gens = minimal_ ? top_generators(k, on_module) : greedy(k, on_module);
      std::vector<Vector> idems;
      std::vector<Vector> images;
      std::vector<Vector> rows;
      for (const auto& [g, s] : gens) {
        idems.push_back(summands_[s].idempotent);
        images.push_back(g);
        for (auto w : summands_[s].basis) rows.push_back(act(w, g, on_module));
      }
      Matrix cover = Matrix::from_rows(a_.field(), rows, space);
      std::vector<Vector> kernel = left_kernel(cover);
      // Kernel coefficients over the term basis, converted to A^n coordinates.
      const std::size_t n = gens.size();
      std::vector<Vector> next;
      next.reserve(kernel.size());
      for (const auto& c : kernel) {
        Vector v(n * d_, a_.field().zero());
        std::size_t row = 0;
        for (std::size_t j = 0; j < n; ++j) {
          for (auto w : summands_[gens[j].second].basis) {
            const Scalar& coeff = c[row++];
            if (coeff.is_zero()) continue;
            const Vector& wv = elements_[w];
            for (std::size_t t = 0; t < d_; ++t) {
              if (!wv[t].is_zero()) v[j * d_ + t] += coeff * wv[t];
            }
          }
        }
        next.push_back(std::move(v));
      }
      res.idempotents.push_back(std::move(idems));
      res.images.push_back(std::move(images));
      res.syzygy_dims.push_back(next.size());
      if (next.empty()) {
        res.terminated = true;
        break;
      }
      k = std::move(next);
      space = n * d_;
    }
    return res;
  }

 private:
  struct Summand {
    Vector idempotent;
    std::size_t element = 0;
    std::vector<std::size_t> basis;         // element ids spanning e A (or A e)
    std::vector<std::size_t> radical_part;  // element ids spanning rad e (or e rad)
  };

  std::size_t add_element(const Vector& v) {
    elements_.push_back(v);
    mult_.push_back(side_ == Side::Right ? a_.right_mult_matrix(v) : a_.left_mult_matrix(v));
    module_action_.emplace_back();
    return elements_.size() - 1;
  }

  Vector act(std::size_t id, const Vector& v, bool on_module) {
    if (on_module) {
      if (!module_action_[id]) module_action_[id] = x_.action_of(elements_[id]);
      return vec_mat(v, *module_action_[id]);
    }
    const Matrix& m = mult_[id];
    Vector out(v.size(), a_.field().zero());
    for (std::size_t j = 0; j * d_ < v.size(); ++j) {
      Vector part(v.begin() + static_cast<long>(j * d_), v.begin() + static_cast<long>((j + 1) * d_));
      if (is_zero(part)) continue;
      Vector img = vec_mat(part, m);
      std::copy(img.begin(), img.end(), out.begin() + static_cast<long>(j * d_));
    }
    return out;
  }

  std::vector<std::pair<Vector, std::size_t>> greedy(const std::vector<Vector>& k, bool on_module) {
    const std::size_t space = k.front().size();
    EchelonBasis span(a_.field(), space);
    std::vector<std::pair<Vector, std::size_t>> out;
    for (const auto& v : k) {
      if (span.contains(v)) continue;
      out.emplace_back(v, 0);
      for (auto w : summands_[0].basis) span.insert(act(w, v, on_module));
    }
    return out;
  }

  /// For each class representative e: vectors of K e independent modulo
  /// (K rad) e, which lift a basis of the e-part of the top.
  std::vector<std::pair<Vector, std::size_t>> top_generators(const std::vector<Vector>& k, bool on_module) {
    const std::size_t space = k.front().size();
    std::vector<std::pair<Vector, std::size_t>> out;
    for (std::size_t s = 0; s < summands_.size(); ++s) {
      EchelonBasis span(a_.field(), space);
      for (const auto& v : k) {
        for (auto w : summands_[s].radical_part) span.insert(act(w, v, on_module));
      }
      for (const auto& v : k) {
        if (span.rank() == space) break;
        Vector u = act(summands_[s].element, v, on_module);
        if (span.insert(u)) out.emplace_back(std::move(u), s);
      }
    }
    return out;
  }

  const Module& x_;
  const Algebra& a_;
  Side side_;
  std::size_t d_;
  bool minimal_;
  const std::vector<Vector>* rad_ = nullptr;
  std::shared_ptr<const IdempotentData> idem_;
  std::vector<Summand> summands_;
  std::vector<Vector> elements_;
  std::vector<Matrix> mult_;
  std::vector<std::optional<Matrix>> module_action_;
};

}  // namespace

std::size_t Resolution::term_dim(std::size_t i) const {
  std::size_t total = 0;
  for (const auto& e : idempotents.at(i)) total += summand_basis(*module.algebra(), module.side(), e).size();
  return total;
}

std::vector<Vector> Resolution::term_basis(std::size_t i) const {
  const Algebra& a = *module.algebra();
  const std::size_t d = a.dim();
  const std::size_t n = rank(i);
  std::vector<Vector> out;
  for (std::size_t j = 0; j < n; ++j) {
    for (const auto& w : summand_basis(a, module.side(), idempotents[i][j])) {
      Vector v(n * d, a.field().zero());
      std::copy(w.begin(), w.end(), v.begin() + static_cast<long>(j * d));
      out.push_back(std::move(v));
    }
  }
  return out;
}

Matrix Resolution::differential(std::size_t i) const {
  const Algebra& a = *module.algebra();
  const std::size_t d = a.dim();
  const std::size_t n = rank(i);
  const std::size_t cols = i == 0 ? module.dim() : rank(i - 1) * d;
  Matrix out(a.field(), n * d, cols);
  for (std::size_t k = 0; k < d; ++k) {
    Matrix m = i == 0 ? module.action(k)
                      : (module.side() == Side::Right ? a.right_mult_basis(k) : a.left_mult_basis(k));
    for (std::size_t j = 0; j < n; ++j) {
      const Vector& g = images[i][j];
      Vector img;
      if (i == 0) {
        img = vec_mat(g, m);
      } else {
        img.assign(cols, a.field().zero());
        for (std::size_t c = 0; c < rank(i - 1); ++c) {
          Vector part(g.begin() + static_cast<long>(c * d), g.begin() + static_cast<long>((c + 1) * d));
          Vector p = vec_mat(part, m);
          std::copy(p.begin(), p.end(), img.begin() + static_cast<long>(c * d));
        }
      }
      out.set_row(j * d + k, img);
    }
  }
  return out;
}

Resolution free_resolution(const Module& x, std::size_t length) { return Resolver(x, false).run(length); }

Resolution minimal_resolution(const Module& x, std::size_t length) { return Resolver(x, true).run(length); }

// ---------------------------------------------------------------------- Tor

std::size_t TorResult::at(std::size_t i) const {
  if (i > max_degree) throw Error(ErrorCode::InvalidArgument, "Tor degree above the computed range");
  return dims[i];
}

TorResult tor_from_resolution(const Resolution& res, const Module& other, std::size_t max_degree) {
  const Module& x = res.module;
  if (other.side() == x.side()) throw Error(ErrorCode::AlgebraMismatch, "Tor needs a right and a left module");
  if (other.algebra() != x.algebra() && !same_structure(*other.algebra(), *x.algebra())) {
    throw Error(ErrorCode::AlgebraMismatch, "Tor modules are over different algebras");
  }
  if (!res.terminated && res.terms() < max_degree + 2) {
    throw Error(ErrorCode::InvalidArgument, "resolution too short for the requested Tor degree");
  }
  const Field& f = x.field();
  const std::size_t d = x.algebra()->dim();
  const std::size_t ds = other.dim();
  const std::size_t terms = std::min(res.terms(), max_degree + 2);

  std::vector<std::size_t> term_dim(terms, 0);  // dim P_i (x) other
  std::vector<std::size_t> rank_d(terms + 1, 0);
  std::map<std::vector<std::string>, std::vector<Vector>> spaces;  // keyed by idempotent text
  auto space_of = [&](const Vector& e) -> const std::vector<Vector>& {
    std::vector<std::string> key;
    for (const auto& c : e) key.push_back(c.to_string());
    auto it = spaces.find(key);
    if (it == spaces.end()) it = spaces.emplace(key, Subspace(f, ds, other.action_of(e).row_list()).basis()).first;
    return it->second;
  };
  for (std::size_t i = 0; i < terms; ++i) {
    std::vector<Vector> rows;
    for (std::size_t j = 0; j < res.rank(i); ++j) {
      const std::vector<Vector>& ys = space_of(res.idempotents[i][j]);
      term_dim[i] += ys.size();
      if (i == 0) continue;
      const Vector& g = res.images[i][j];
      std::vector<std::optional<Matrix>> acts(res.rank(i - 1));
      for (std::size_t c = 0; c < res.rank(i - 1); ++c) {
        Vector part(g.begin() + static_cast<long>(c * d), g.begin() + static_cast<long>((c + 1) * d));
        if (!is_zero(part)) acts[c] = other.action_of(part);
      }
      for (const auto& y : ys) {
        Vector row(res.rank(i - 1) * ds, f.zero());
        for (std::size_t c = 0; c < acts.size(); ++c) {
          if (!acts[c]) continue;
          Vector p = vec_mat(y, *acts[c]);
          std::copy(p.begin(), p.end(), row.begin() + static_cast<long>(c * ds));
        }
        rows.push_back(std::move(row));
      }
    }
    if (i > 0) rank_d[i] = rank(Matrix::from_rows(f, rows, res.rank(i - 1) * ds));
  }
  TorResult out;
  out.max_degree = max_degree;
  out.certified = res.terminated;
  if (res.terminated) out.vanishes_above = res.length();
  for (std::size_t i = 0; i <= max_degree; ++i) {
    out.dims.push_back(i < terms ? term_dim[i] - rank_d[i] - rank_d[i + 1] : 0);
  }
  return out;
}

TorResult tor(const Module& t, const Module& s, std::size_t max_degree) {
  if (t.side() != Side::Right || s.side() != Side::Left) {
    throw Error(ErrorCode::AlgebraMismatch, "Tor(t, s) needs a right module t and a left module s");
  }
  const bool minimal = cached_radical(t.algebra()) != nullptr;
  Resolution res = minimal ? minimal_resolution(t, max_degree + 1) : free_resolution(t, max_degree + 1);
  return tor_from_resolution(res, s, max_degree);
}

TorResult tor_until_nonzero(const Module& t, const Module& s, std::size_t max_degree) {
  for (std::size_t d = std::min<std::size_t>(1, max_degree);; d = std::min(2 * d, max_degree)) {
    TorResult r = tor(t, s, d);
    const bool nonzero = std::any_of(r.dims.begin() + 1, r.dims.end(), [](std::size_t x) { return x != 0; });
    // A terminated resolution already decides every degree.
    if (nonzero || d == max_degree || (r.certified && *r.vanishes_above <= d)) {
      if (!nonzero && d < max_degree) {
        r.dims.resize(max_degree + 1, 0);
        r.max_degree = max_degree;
      }
      return r;
    }
  }
}

std::size_t tensor_dimension(const Module& t, const Module& s) {
  return tor_from_resolution(free_resolution(t, 1), s, 0).dims[0];
}

// ------------------------------------------------------- ring epimorphisms

RingEpiVerdict is_ring_epimorphism(const AlgebraMorphism& f) {
  const AlgebraPtr& target = f.target();
  Module right = restrict_module(Module::regular(target, Side::Right), f);
  Module left = restrict_module(Module::regular(target, Side::Left), f);
  RingEpiVerdict v;
  v.target_dim = target->dim();
  v.tensor_dim = tensor_dimension(right, left);
  if (target->dim() <= 40) {
    // Second route: the explicit quotient of S (x)_k S.
    std::size_t explicit_dim = tensor_over(right, left).dim();
    if (explicit_dim != v.tensor_dim) {
      throw Error(ErrorCode::InternalInconsistency, "presented and explicit tensor squares disagree: " +
                                                        std::to_string(v.tensor_dim) + " vs " +
                                                        std::to_string(explicit_dim));
    }
  }
  v.holds = v.tensor_dim == v.target_dim;
  return v;
}

HomologicalVerdict is_homological_up_to(const AlgebraMorphism& f, std::size_t bound) {
  HomologicalVerdict v;
  v.bound = bound;
  v.ring_epi = is_ring_epimorphism(f).holds;
  const AlgebraPtr& target = f.target();
  Module right = restrict_module(Module::regular(target, Side::Right), f);
  Module left = restrict_module(Module::regular(target, Side::Left), f);
  TorResult t = tor_until_nonzero(right, left, bound);
  v.tor_dims = t.dims;
  for (std::size_t i = 1; i < t.dims.size(); ++i) {
    if (t.dims[i] != 0) {
      v.failing_degree = i;
      break;
    }
  }
  v.holds = v.ring_epi && !v.failing_degree;
  if (v.holds) {
    v.unconditional = t.certified && *t.vanishes_above <= bound;
    if (!v.unconditional && cached_radical(f.source())) {
      // The other side may have finite projective dimension.
      Resolution res = minimal_resolution(left, bound + 1);
      v.unconditional = res.terminated && res.length() <= bound;
    }
  }
  return v;
}

// ------------------------------------------------------ projective dimension

std::string ProjectiveDimension::to_string() const {
  if (value) return std::to_string(*value);
  return ">= " + std::to_string(bound + 1);
}

ProjectiveDimension projective_dimension(const Module& x, std::size_t bound) {
  ProjectiveDimension pd;
  pd.bound = bound;
  if (x.dim() == 0) {
    pd.zero_module = true;
    pd.value = 0;
    return pd;
  }
  Resolution res = minimal_resolution(x, bound);
  if (res.kind != ResolutionKind::MinimalProjective) return projective_dimension_via_simples(x, bound);
  if (res.terminated) pd.value = res.length();
  return pd;
}

ProjectiveDimension projective_dimension_via_simples(const Module& x, std::size_t bound) {
  ProjectiveDimension pd;
  pd.bound = bound;
  if (x.dim() == 0) {
    pd.zero_module = true;
    pd.value = 0;
    return pd;
  }
  const std::vector<Vector>* rad = cached_radical(x.algebra());
  if (!rad) {
    throw Error(ErrorCode::CharacteristicTooSmall, "projective dimension needs characteristic 0 or p > dim");
  }
  Side other = x.side() == Side::Right ? Side::Left : Side::Right;
  Module top = quotient_module(Module::regular(x.algebra(), other), *rad).module;
  // Resolve the semisimple quotient, not x: Tor is balanced, and this keeps
  // the route independent of the resolution of x.
  TorResult t = tor_from_resolution(minimal_resolution(top, bound + 2), x, bound + 1);
  for (std::size_t i = 0; i <= bound + 1; ++i) {
    if (t.dims[i] == 0) {
      if (i > 0) pd.value = i - 1;
      return pd;
    }
  }
  return pd;
}

}  // namespace excon
