#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "excon/field.hpp"

namespace excon {

using Vector = std::vector<Scalar>;

/// Dense row-major matrix over a single field.
///
/// Linear maps between modules and algebras are stored in row convention:
/// a map V -> W is a dim(V) x dim(W) matrix acting on row vectors, so the
/// composite "first F then G" is the product F * G.
class Matrix {
 public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries);

  static Matrix identity(Field field, std::size_t n);
  static Matrix from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols);
  /// Builds from integer entries; rows must all have the same length.
  static Matrix from_ints(Field field, const std::vector<std::vector<long long>>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<Scalar>& entries() const { return data_; }

  Vector row(std::size_t r) const;
  Vector column(std::size_t c) const;
  void set_row(std::size_t r, const Vector& v);
  std::vector<Vector> row_list() const;

  Matrix transpose() const;
  bool is_zero() const;

  /// The block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& s, const Matrix& a);
  Matrix& operator+=(const Matrix& b);
  /// this += s * b
  void add_scaled(const Scalar& s, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b);
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Row vector times matrix.
Vector vec_mat(const Vector& v, const Matrix& m);
/// Matrix times column vector.
Vector mat_vec(const Matrix& m, const Vector& v);

Vector zero_vector(const Field& f, std::size_t n);
Vector unit_vector(const Field& f, std::size_t n, std::size_t i);
bool is_zero(const Vector& v);
Vector add(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);
Vector scale(const Scalar& s, const Vector& v);
/// a += s * b
void axpy(Vector& a, const Scalar& s, const Vector& b);
Vector concat(const Vector& a, const Vector& b);
/// Row-major flattening of a matrix.
Vector flatten(const Matrix& m);
Matrix unflatten(const Field& f, const Vector& v, std::size_t rows, std::size_t cols);

/// Direct sum diag(a, b).
Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// Kronecker product.
Matrix kronecker(const Matrix& a, const Matrix& b);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

}  // namespace excon
