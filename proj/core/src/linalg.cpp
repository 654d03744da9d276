#include "excon/linalg.hpp"

#include "excon/error.hpp"

namespace excon {

RrefResult rref(const Matrix& m) {
  RrefResult out{m, {}, 0};
  Matrix& a = out.reduced;
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a(p, j), a(r, j));
    }
    Scalar inv = a(r, c).inverse();
    if (!inv.is_one()) {
      for (std::size_t j = c; j < cols; ++j) {
        if (!a(r, j).is_zero()) a(r, j) *= inv;
      }
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Scalar f = a(i, c);
      for (std::size_t j = c; j < cols; ++j) {
        if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

std::size_t rank(const Matrix& m) {
  // Streaming elimination stops early once the rank reaches the width.
  EchelonBasis e(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    e.insert(m.row(r));
    if (e.rank() == m.cols()) break;
  }
  return e.rank();
}

std::vector<Vector> kernel_basis(const Matrix& m) {
  RrefResult r = rref(m);
  const Field& f = m.field();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Vector> out;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vector v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = -r.reduced(i, free);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vector> left_kernel(const Matrix& m) { return kernel_basis(m.transpose()); }

std::optional<Vector> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "right-hand side length does not match rows");
  RrefResult r = rref(hstack(m, Matrix::from_rows(m.field(), {b}, m.rows()).transpose()));
  Vector x(m.cols(), m.field().zero());
  for (std::size_t i = 0; i < r.rank; ++i) {
    if (r.pivots[i] == m.cols()) return std::nullopt;  // pivot in the augmented column
    x[r.pivots[i]] = r.reduced(i, m.cols());
  }
  return x;
}

std::optional<Vector> solve_left(const Matrix& m, const Vector& b) { return solve(m.transpose(), b); }

Vector QuotientPresentation::project(const Vector& ambient) const { return vec_mat(ambient, projection); }
Vector QuotientPresentation::lift(const Vector& quotient) const { return vec_mat(quotient, section); }

QuotientPresentation quotient_space(const Field& field, std::size_t ambient_dim, const std::vector<Vector>& relations) {
  for (const auto& v : relations) {
    if (v.size() != ambient_dim) throw Error(ErrorCode::DimensionMismatch, "relation length does not match ambient dimension");
  }
  QuotientPresentation q;
  q.ambient_dim = ambient_dim;
  Subspace sub(field, ambient_dim, relations);
  q.relation_pivots = sub.pivots();
  q.relations_rref = Matrix::from_rows(field, sub.basis(), ambient_dim);
  std::vector<long> pivot_row(ambient_dim, -1);
  for (std::size_t i = 0; i < q.relation_pivots.size(); ++i) pivot_row[q.relation_pivots[i]] = static_cast<long>(i);
  std::vector<long> quotient_index(ambient_dim, -1);
  for (std::size_t c = 0; c < ambient_dim; ++c) {
    if (pivot_row[c] < 0) {
      quotient_index[c] = static_cast<long>(q.basis_coordinates.size());
      q.basis_coordinates.push_back(c);
    }
  }
  q.dim = q.basis_coordinates.size();
  q.projection = Matrix(field, ambient_dim, q.dim);
  q.section = Matrix(field, q.dim, ambient_dim);
  for (std::size_t c = 0; c < ambient_dim; ++c) {
    if (pivot_row[c] < 0) {
      q.projection(c, static_cast<std::size_t>(quotient_index[c])) = field.one();
    } else {
      // e_c is congruent to e_c - (relation row with pivot c), supported off the pivots.
      const Vector& rel = sub.basis()[static_cast<std::size_t>(pivot_row[c])];
      for (std::size_t j = 0; j < q.dim; ++j) q.projection(c, j) = -rel[q.basis_coordinates[j]];
    }
  }
  for (std::size_t j = 0; j < q.dim; ++j) q.section(j, q.basis_coordinates[j]) = field.one();
  return q;
}

Subspace::Subspace(const Field& field, std::size_t ambient_dim, const std::vector<Vector>& spanning)
    : field_(field), ambient_(ambient_dim) {
  if (spanning.empty()) return;
  EchelonBasis e(field, ambient_dim);
  std::vector<Vector> indep;
  for (const auto& v : spanning) {
    if (v.size() != ambient_dim) throw Error(ErrorCode::DimensionMismatch, "spanning vector length mismatch");
    if (e.insert(v)) indep.push_back(v);
  }
  if (indep.empty()) return;
  RrefResult r = rref(Matrix::from_rows(field, indep, ambient_dim));
  for (std::size_t i = 0; i < r.rank; ++i) rows_.push_back(r.reduced.row(i));
  pivots_ = r.pivots;
}

std::optional<Vector> Subspace::coordinates(const Vector& v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  Vector coords(rows_.size(), field_.zero());
  Vector rest = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    coords[i] = v[pivots_[i]];
    axpy(rest, -coords[i], rows_[i]);
  }
  if (!is_zero(rest)) return std::nullopt;
  return coords;
}

bool Subspace::contains(const Vector& v) const { return coordinates(v).has_value(); }

EchelonBasis::EchelonBasis(const Field& field, std::size_t ambient_dim, bool track)
    : field_(field), ambient_(ambient_dim), track_(track) {}

Vector EchelonBasis::reduce(Vector v) const {
  if (v.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = v[pivots_[k]];
    if (!c.is_zero()) axpy(v, -c, rows_[k]);
  }
  return v;
}

bool EchelonBasis::contains(const Vector& v) const { return is_zero(reduce(v)); }

bool EchelonBasis::insert(const Vector& v) {
  if (rows_.size() == ambient_) return false;
  Vector w = v;
  if (w.size() != ambient_) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  Vector expr;
  if (track_) {
    expr.assign(rows_.size() + 1, field_.zero());
    expr[rows_.size()] = field_.one();
  }
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = w[pivots_[k]];
    if (c.is_zero()) continue;
    axpy(w, -c, rows_[k]);
    if (track_) {
      for (std::size_t i = 0; i < exprs_[k].size(); ++i) expr[i] -= c * exprs_[k][i];
    }
  }
  std::size_t p = 0;
  while (p < ambient_ && w[p].is_zero()) ++p;
  if (p == ambient_) return false;
  Scalar inv = w[p].inverse();
  for (auto& x : w) {
    if (!x.is_zero()) x *= inv;
  }
  if (track_) {
    for (auto& x : expr) x *= inv;
  }
  rows_.push_back(std::move(w));
  pivots_.push_back(p);
  if (track_) exprs_.push_back(std::move(expr));
  return true;
}

std::optional<Vector> EchelonBasis::express(const Vector& v) const {
  if (!track_) throw Error(ErrorCode::InvalidArgument, "express() requires coordinate tracking");
  Vector w = v;
  Vector coeffs(rows_.size(), field_.zero());
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const Scalar c = w[pivots_[k]];
    if (c.is_zero()) continue;
    axpy(w, -c, rows_[k]);
    for (std::size_t i = 0; i < exprs_[k].size(); ++i) coeffs[i] += c * exprs_[k][i];
  }
  if (!is_zero(w)) return std::nullopt;
  return coeffs;
}

std::vector<std::size_t> independent_subset(const Field& field, std::size_t ambient_dim, const std::vector<Vector>& vectors) {
  EchelonBasis e(field, ambient_dim);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (e.insert(vectors[i])) out.push_back(i);
  }
  return out;
}

Matrix inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RrefResult r = rref(hstack(m, Matrix::identity(m.field(), n)));
  if (r.rank < n || (n > 0 && r.pivots[n - 1] != n - 1)) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is singular");
  }
  return r.reduced.block(0, n, n, n);
}

}  // namespace excon
