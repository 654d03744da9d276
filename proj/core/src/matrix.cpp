#include "excon/matrix.hpp"

#include <sstream>

#include "excon/error.hpp"

namespace excon {

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "matrix entry count does not match its shape");
  }
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

Matrix Matrix::from_rows(Field field, const std::vector<Vector>& rows, std::size_t cols) {
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

Matrix Matrix::from_ints(Field field, const std::vector<std::vector<long long>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Matrix m(field, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw Error(ErrorCode::DimensionMismatch, "ragged integer matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = field.from_int(rows[r][c]);
  }
  return m;
}

Vector Matrix::row(std::size_t r) const {
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Vector Matrix::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void Matrix::set_row(std::size_t r, const Vector& v) {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "row length does not match matrix width");
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

std::vector<Vector> Matrix::row_list() const {
  std::vector<Vector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& s : data_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
  Matrix b(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (std::size_t c = 0; c < nc; ++c) b(r, c) = (*this)(r0 + r, c0 + c);
  }
  return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw Error(ErrorCode::DimensionMismatch, "block out of range");
  for (std::size_t r = 0; r < b.rows_; ++r) {
    for (std::size_t c = 0; c < b.cols_; ++c) (*this)(r0 + r, c0 + c) = b(r, c);
  }
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Scalar* orow = &out.data_[i * b.cols_];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      const Scalar* brow = &b.data_[k * b.cols_];
      if (x.is_one()) {
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!brow[j].is_zero()) orow[j] += brow[j];
        }
      } else {
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (!brow[j].is_zero()) orow[j] += x * brow[j];
        }
      }
    }
  }
  return out;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  out += b;
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  out.add_scaled(-a.field_.one(), b);
  return out;
}

Matrix operator*(const Scalar& s, const Matrix& a) {
  Matrix out = a;
  for (auto& x : out.data_) x = s * x;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!b.data_[i].is_zero()) data_[i] += b.data_[i];
  }
  return *this;
}

void Matrix::add_scaled(const Scalar& s, const Matrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix sum shape mismatch");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < data_.size(); ++i) {
    if (!b.data_[i].is_zero()) data_[i] += s * b.data_[i];
  }
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

Vector vec_mat(const Vector& v, const Matrix& m) {
  if (v.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "vector-matrix shape mismatch");
  Vector out(m.cols(), m.field().zero());
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar& e = m(k, j);
      if (!e.is_zero()) out[j] += v[k] * e;
    }
  }
  return out;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
  if (v.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector shape mismatch");
  Vector out(m.rows(), m.field().zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Scalar acc = m.field().zero();
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!v[j].is_zero() && !m(i, j).is_zero()) acc += m(i, j) * v[j];
    }
    out[i] = acc;
  }
  return out;
}

Vector zero_vector(const Field& f, std::size_t n) { return Vector(n, f.zero()); }

Vector unit_vector(const Field& f, std::size_t n, std::size_t i) {
  Vector v(n, f.zero());
  v.at(i) = f.one();
  return v;
}

bool is_zero(const Vector& v) {
  for (const auto& s : v) {
    if (!s.is_zero()) return false;
  }
  return true;
}

Vector add(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sum length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Vector sub(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector difference length mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Vector scale(const Scalar& s, const Vector& v) {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

void axpy(Vector& a, const Scalar& s, const Vector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector length mismatch");
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!b[i].is_zero()) a[i] += s * b[i];
  }
}

Vector concat(const Vector& a, const Vector& b) {
  Vector out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

Vector flatten(const Matrix& m) { return m.entries(); }

Matrix unflatten(const Field& f, const Vector& v, std::size_t rows, std::size_t cols) {
  return Matrix(f, rows, cols, v);
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), a.cols(), b);
  return out;
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
  Matrix out(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Scalar& x = a(i, j);
      if (x.is_zero()) continue;
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (std::size_t l = 0; l < b.cols(); ++l) {
          if (!b(k, l).is_zero()) out(i * b.rows() + k, j * b.cols() + l) = x * b(k, l);
        }
      }
    }
  }
  return out;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "hstack row mismatch");
  Matrix out(a.field(), a.rows(), a.cols() + b.cols());
  out.set_block(0, 0, a);
  out.set_block(0, a.cols(), b);
  return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "vstack column mismatch");
  Matrix out(a.field(), a.rows() + b.rows(), a.cols());
  out.set_block(0, 0, a);
  out.set_block(a.rows(), 0, b);
  return out;
}

}  // namespace excon
