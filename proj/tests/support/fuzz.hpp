#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "excon/algebra.hpp"
#include "excon/exact_context.hpp"
#include "excon/linalg.hpp"
#include "excon/module.hpp"
#include "support/builders.hpp"

namespace excon::testing {

/// An algebra with its augmentations a -> k (dim a x 1 matrices).
struct Augmented {
  std::string name;
  AlgebraPtr algebra;
  std::vector<Matrix> augs;
  const Matrix& eps() const { return augs.front(); }
};

class Fuzzer {
 public:
  explicit Fuzzer(std::uint32_t seed, Field field = Field::prime(101)) : rng_(seed), f_(std::move(field)) {}

  const Field& field() const { return f_; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  Scalar scalar() { return f_.from_int(static_cast<long long>(rng_() % 101)); }
  Scalar nonzero() { return f_.from_int(static_cast<long long>(1 + rng_() % 100)); }

  Matrix invertible(std::size_t n) {
    for (;;) {
      Matrix m(f_, n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = scalar();
      }
      if (rank(m) == n) return m;
    }
  }

  /// Augmented algebras of dimension at most 3.
  std::vector<Augmented> bases() const {
    const Field& f = f_;
    std::vector<Augmented> out;
    AlgebraPtr k = ground_field_algebra(f);
    auto col = [&](std::vector<long long> v) {
      std::vector<std::vector<long long>> rows;
      for (auto x : v) rows.push_back({x});
      return Matrix::from_ints(f, rows);
    };
    out.push_back({"k", k, {col({1})}});
    out.push_back({"kxk", product(k, k).algebra, {col({1, 0}), col({0, 1})}});
    out.push_back({"k[x]/x^2", dual_numbers(f), {col({1, 0})}});
    out.push_back({"k[x]/x^3", truncated_polynomial(3), {col({1, 0, 0})}});
    // Upper-triangular 2x2 matrices, basis E11, E12, E22.
    out.push_back({"T2", triangular_algebra(Bimodule::regular(k)).algebra, {col({1, 0, 0}), col({0, 0, 1})}});
    out.push_back({"loops2", loops_radical_square_zero(f, {"u", "v"}).algebra, {col({1, 0, 0})}});
    out.push_back({"kxkxk", product(product(k, k).algebra, k).algebra, {col({1, 0, 0}), col({0, 1, 0}), col({0, 0, 1})}});
    return out;
  }

  /// A random base, re-expressed in a random basis.
  Augmented base(std::size_t max_dim = 3, std::size_t min_augs = 1) {
    std::vector<Augmented> all;
    for (auto& a : bases()) {
      if (a.algebra->dim() <= max_dim && a.augs.size() >= min_augs) all.push_back(std::move(a));
    }
    Augmented a = all[below(all.size())];
    const Matrix p = invertible(a.algebra->dim());
    // Augmentations follow the basis change; a random one comes first.
    std::swap(a.augs.front(), a.augs[below(a.augs.size())]);
    for (auto& e : a.augs) e = p * e;
    return {a.name, transport(a.algebra, p), a.augs};
  }

  /// eps() or, half the time when there is one, a different augmentation.
  const Matrix& any_aug(const Augmented& a) {
    if (a.augs.size() == 1 || below(2) == 0) return a.eps();
    return a.augs[1 + below(a.augs.size() - 1)];
  }

  // ------------------------------------------------------------- Morita

  /// (A, C, X, Y, f, g) from one of three families:
  ///  0: A = C = X = Y = L, x y = c xy, y x = c yx;
  ///  1: X = Y = k through augmentations (Y may use another augmentation of
  ///     A, killing Y (x)_A X), pairings in the matching socles;
  ///  2: A = L, C = k, X = Y = L, zero pairings.
  MoritaData morita(std::size_t family, std::string& description) {
    switch (family % 3) {
      case 0: {
        Augmented l = base();
        const Scalar c = below(4) == 0 ? f_.zero() : nonzero();
        Bimodule reg = Bimodule::regular(l.algebra);
        const std::size_t n = l.algebra->dim();
        std::vector<std::vector<Vector>> pf(n, std::vector<Vector>(n)), pg(n, std::vector<Vector>(n));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            pf[i][j] = scale(c, l.algebra->multiply(l.algebra->basis_vector(i), l.algebra->basis_vector(j)));
            pg[j][i] = scale(c, l.algebra->multiply(l.algebra->basis_vector(j), l.algebra->basis_vector(i)));
          }
        }
        description = "regular " + l.name + ", c = " + c.to_string();
        return MoritaData{l.algebra, l.algebra, reg, reg, pf, pg};
      }
      case 1: {
        // Half the draws take A with a second augmentation and twist Y by it.
        const bool twist = below(2) == 0;
        Augmented a = base(3, twist ? 2 : 1);
        Augmented c = base();
        const Matrix& ea = a.eps();
        const Matrix& ea2 = twist ? a.augs[1 + below(a.augs.size() - 1)] : a.eps();
        const Matrix& ec = c.eps();
        const Bimodule x = augmentation_bimodule(a.algebra, ea, c.algebra, ec);
        const Bimodule y = augmentation_bimodule(c.algebra, ec, a.algebra, ea2);
        // f = u in A with s u = ea(s) u, u s = ea2(s) u; g = v in C with
        // s v = v s = ec(s) v; compatibility asks ea(u) = ea2(u) = ec(v).
        const std::vector<Vector> su = socle(a.algebra, ea, ea2);
        const std::vector<Vector> sv = socle(c.algebra, ec, ec);
        const bool same = ea == ea2;
        Vector u = combination(a.algebra->dim(), su, {ea, ea2});
        Vector v = same ? combination(c.algebra->dim(), sv, {ec}) : zero_vector(f_, c.algebra->dim());
        const Vector ua = unit_eps(su, ea);
        const Vector vc = unit_eps(sv, ec);
        if (same && !ua.empty() && !vc.empty() && below(2) == 0) {
          const Scalar t = nonzero();
          u = add(u, scale(t, ua));
          v = add(v, scale(t, vc));
        }
        description = "augmentation " + a.name + " / " + c.name + (same ? "" : ", Y twisted");
        return MoritaData{a.algebra, c.algebra, x, y, {{u}}, {{v}}};
      }
      default: {
        Augmented l = base();
        AlgebraPtr k = ground_field_algebra(f_);
        const std::size_t n = l.algebra->dim();
        std::vector<Matrix> kact = {Matrix::identity(f_, n)};
        std::vector<Matrix> lact, ract;
        for (std::size_t i = 0; i < n; ++i) {
          lact.push_back(l.algebra->left_mult_basis(i));
          ract.push_back(l.algebra->right_mult_basis(i));
        }
        Bimodule x = Bimodule::make(l.algebra, k, n, lact, kact);
        Bimodule y = Bimodule::make(k, l.algebra, n, kact, ract);
        std::vector<std::vector<Vector>> pf(n, std::vector<Vector>(n, zero_vector(f_, n)));
        std::vector<std::vector<Vector>> pg(n, std::vector<Vector>(n, zero_vector(f_, 1)));
        description = "zero pairings " + l.name + " / k";
        return MoritaData{l.algebra, k, x, y, pf, pg};
      }
    }
  }

  // ------------------------------------------------------- strictly pure

  /// R (+) X with X = R (square zero) or X = k x through a pair of
  /// augmentations (r x = e1(r) x, x r = e2(r) x) with x x = sq x, sq = 0
  /// unless e1 = e2; the result is re-expressed in a random basis.
  PureExtension pure_extension(const Augmented& r, std::string& description) {
    const AlgebraPtr& ra = r.algebra;
    const std::size_t dr = ra->dim();
    const bool regular = dr <= 2 && below(2) == 0;
    const std::size_t dx = regular ? dr : 1;
    const std::size_t n = dr + dx;
    const Matrix& e1 = any_aug(r);
    const Matrix& e2 = any_aug(r);
    const Scalar sq = regular || e1 != e2 || below(2) == 0 ? f_.zero() : nonzero();
    std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n, zero_vector(f_, n)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Vector& out = mult[i][j];
        if (i < dr && j < dr) {
          place(out, 0, ra->multiply(ra->basis_vector(i), ra->basis_vector(j)));
        } else if (i < dr) {
          place(out, dr, regular ? ra->multiply(ra->basis_vector(i), ra->basis_vector(j - dr)) : Vector{e1(i, 0)});
        } else if (j < dr) {
          place(out, dr, regular ? ra->multiply(ra->basis_vector(i - dr), ra->basis_vector(j)) : Vector{e2(j, 0)});
        } else if (!regular) {
          out[dr] = sq;
        }
      }
    }
    Vector unit = zero_vector(f_, n);
    place(unit, 0, ra->unit());
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("b" + std::to_string(i));
    AlgebraPtr s = Algebra::make(f_, labels, mult, unit);
    Matrix incl(f_, dr, n);
    for (std::size_t i = 0; i < dr; ++i) incl(i, i) = f_.one();
    std::vector<Vector> ideal;
    for (std::size_t k = 0; k < dx; ++k) ideal.push_back(s->basis_vector(dr + k));
    // Random basis of S: old coordinates v become v P^{-1}.
    const Matrix p = invertible(n);
    const Matrix pinv = inverse(p);
    AlgebraPtr moved = transport(s, p);
    for (auto& v : ideal) v = vec_mat(v, pinv);
    description = std::string(regular ? "R (+) R" : (e1 == e2 ? "R (+) k" : "R (+) k twisted")) +
                  (sq.is_zero() ? "" : ", x^2 = " + sq.to_string() + " x");
    return PureExtension{AlgebraMorphism(ra, moved, incl * pinv), ideal};
  }

  PureContext pure(std::string& description) {
    const Augmented r = base(2);
    std::string ds, dt;
    PureExtension s = pure_extension(r, ds);
    PureExtension t = pure_extension(r, dt);
    description = r.name + ": S = " + ds + ", T = " + dt;
    return context_from_strictly_pure(s, t);
  }

 private:
  AlgebraPtr truncated_polynomial(std::size_t n) const {
    std::vector<std::vector<Vector>> m(n, std::vector<Vector>(n, zero_vector(f_, n)));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; i + j < n; ++j) m[i][j][i + j] = f_.one();
    }
    std::vector<std::string> labels = {"1", "x", "x^2", "x^3"};
    labels.resize(n);
    return Algebra::make(f_, labels, m, unit_vector(f_, n, 0));
  }

  /// k as an a-c-bimodule through the augmentations el of a and er of c.
  Bimodule augmentation_bimodule(const AlgebraPtr& a, const Matrix& el, const AlgebraPtr& c, const Matrix& er) const {
    std::vector<Matrix> l, r;
    for (std::size_t i = 0; i < a->dim(); ++i) l.push_back(Matrix(f_, 1, 1, {el(i, 0)}));
    for (std::size_t j = 0; j < c->dim(); ++j) r.push_back(Matrix(f_, 1, 1, {er(j, 0)}));
    return Bimodule::make(a, c, 1, l, r);
  }

  /// {u : b u = el(b) u, u b = er(b) u for every basis element b}.
  std::vector<Vector> socle(const AlgebraPtr& a, const Matrix& el, const Matrix& er) const {
    const std::size_t n = a->dim();
    Matrix big(f_, n, 2 * n * n);
    for (std::size_t b = 0; b < n; ++b) {
      const Matrix right = a->right_mult_basis(b);  // u -> u b
      const Matrix left = a->left_mult_basis(b);    // u -> b u
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          big(i, b * n + j) = right(i, j) - (i == j ? er(b, 0) : f_.zero());
          big(i, n * n + b * n + j) = left(i, j) - (i == j ? el(b, 0) : f_.zero());
        }
      }
    }
    return left_kernel(big);
  }

  /// A random combination of the members of `span` killed by every map in `kill`.
  Vector combination(std::size_t n, const std::vector<Vector>& span, const std::vector<Matrix>& kill) {
    std::vector<Vector> ok;
    for (const auto& s : span) {
      bool zero = true;
      for (const auto& k : kill) zero = zero && vec_mat(s, k)[0].is_zero();
      if (zero) ok.push_back(s);
    }
    Vector v = zero_vector(f_, n);
    for (const auto& s : ok) v = add(v, scale(scalar(), s));
    return v;
  }

  /// An element of the socle with eps = 1, or empty.
  Vector unit_eps(const std::vector<Vector>& span, const Matrix& eps) const {
    for (const auto& s : span) {
      const Scalar e = vec_mat(s, eps)[0];
      if (!e.is_zero()) return scale(f_.one() / e, s);
    }
    return {};
  }

  static void place(Vector& out, std::size_t at, const Vector& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out[at + i] = v[i];
  }

  std::mt19937 rng_;
  Field f_;
};

struct FuzzMorita {
  std::string description;
  MoritaContext context;
};
struct FuzzPure {
  std::string description;
  PureContext context;
};

/// `count` Morita contexts cycling through the three families.
inline std::vector<FuzzMorita> fuzz_morita(std::size_t count, std::uint32_t seed) {
  Fuzzer fz(seed);
  std::vector<FuzzMorita> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string d;
    MoritaData data = fz.morita(i, d);
    out.push_back({"morita #" + std::to_string(i) + " (" + d + ")", context_from_morita(data)});
  }
  return out;
}

inline std::vector<FuzzPure> fuzz_pure(std::size_t count, std::uint32_t seed) {
  Fuzzer fz(seed);
  std::vector<FuzzPure> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::string d;
    PureContext p = fz.pure(d);
    out.push_back({"pure #" + std::to_string(i) + " (" + d + ")", std::move(p)});
  }
  return out;
}

}  // namespace excon::testing
