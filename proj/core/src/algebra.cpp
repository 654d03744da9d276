#include "excon/algebra.hpp"

#include <algorithm>

#include "excon/error.hpp"

namespace excon {

SparseVector to_sparse(const Vector& v) {
  SparseVector out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_zero()) out.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  }
  return out;
}

Vector to_dense(const Field& f, const SparseVector& v, std::size_t dim) {
  Vector out(dim, f.zero());
  for (const auto& [i, c] : v) out[i] = c;
  return out;
}

namespace {

void add_sparse(Vector& acc, const Scalar& s, const SparseVector& v) {
  for (const auto& [i, c] : v) acc[i] += s * c;
}

std::string default_label(std::size_t i) { return "v" + std::to_string(i); }

}  // namespace

std::string AxiomFailure::describe() const {
  std::string w;
  for (std::size_t i = 0; i < witness.size(); ++i) w += (i ? "," : "") + std::to_string(witness[i]);
  switch (kind) {
    case Kind::Associativity: return "associativity fails on basis triple (" + w + ")";
    case Kind::LeftUnit: return "left unit law fails on basis element " + w;
    case Kind::RightUnit: return "right unit law fails on basis element " + w;
  }
  return "axiom failure";
}

Algebra::Algebra(Field field, std::vector<std::string> labels, std::vector<SparseVector> mult, Vector unit)
    : field_(field), dim_(unit.size()), labels_(std::move(labels)), mult_(std::move(mult)), unit_(std::move(unit)) {
  if (labels_.empty() && dim_ > 0) {
    for (std::size_t i = 0; i < dim_; ++i) labels_.push_back(default_label(i));
  }
  if (labels_.size() != dim_ || mult_.size() != dim_ * dim_) {
    throw Error(ErrorCode::DimensionMismatch, "structure-constant tensor does not match the algebra dimension");
  }
  for (const auto& sv : mult_) {
    for (const auto& [i, c] : sv) {
      if (i >= dim_) throw Error(ErrorCode::DimensionMismatch, "structure constant index out of range");
      if (c.modulus() != field_.characteristic() && !c.is_zero()) {
        throw Error(ErrorCode::FieldMismatch, "structure constant from a different field");
      }
    }
  }
}

AlgebraPtr Algebra::make(Field field, std::vector<std::string> labels, std::vector<SparseVector> mult, Vector unit) {
  AlgebraPtr a(new Algebra(field, std::move(labels), std::move(mult), std::move(unit)));
  if (auto fail = a->find_axiom_failure()) {
    throw Error(fail->kind == AxiomFailure::Kind::Associativity ? ErrorCode::NonAssociative : ErrorCode::BadUnit,
                fail->describe(), fail->witness);
  }
  return a;
}

AlgebraPtr Algebra::make(Field field, std::vector<std::string> labels, const std::vector<std::vector<Vector>>& mult, Vector unit) {
  const std::size_t d = unit.size();
  if (mult.size() != d) throw Error(ErrorCode::DimensionMismatch, "structure-constant table has the wrong number of rows");
  std::vector<SparseVector> sparse;
  sparse.reserve(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    if (mult[i].size() != d) throw Error(ErrorCode::DimensionMismatch, "structure-constant table row has the wrong length");
    for (std::size_t j = 0; j < d; ++j) {
      if (mult[i][j].size() != d) throw Error(ErrorCode::DimensionMismatch, "product vector has the wrong length");
      sparse.push_back(to_sparse(mult[i][j]));
    }
  }
  return make(field, std::move(labels), std::move(sparse), std::move(unit));
}

AlgebraPtr Algebra::make_trusted(Field field, std::vector<std::string> labels, std::vector<SparseVector> mult, Vector unit) {
  return AlgebraPtr(new Algebra(field, std::move(labels), std::move(mult), std::move(unit)));
}

std::optional<std::size_t> Algebra::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

Vector Algebra::multiply(const Vector& a, const Vector& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "element length does not match algebra");
  Vector out = zero();
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j].is_zero()) continue;
      add_sparse(out, a[i] * b[j], product(i, j));
    }
  }
  return out;
}

Matrix Algebra::left_mult_matrix(const Vector& a) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t r = 0; r < dim_; ++r) {
      for (const auto& [k, c] : product(i, r)) m(r, k) += a[i] * c;
    }
  }
  return m;
}

Matrix Algebra::right_mult_matrix(const Vector& a) const {
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t r = 0; r < dim_; ++r) {
      for (const auto& [k, c] : product(r, i)) m(r, k) += a[i] * c;
    }
  }
  return m;
}

Matrix Algebra::left_mult_basis(std::size_t i) const { return left_mult_matrix(basis_vector(i)); }
Matrix Algebra::right_mult_basis(std::size_t i) const { return right_mult_matrix(basis_vector(i)); }

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = i + 1; j < dim_; ++j) {
      if (product(i, j) != product(j, i)) return false;
    }
  }
  return true;
}

std::optional<AxiomFailure> Algebra::find_axiom_failure() const {
  const std::size_t d = dim_;
  // Unit law first: a wrong unit is the more specific diagnosis.
  for (std::size_t i = 0; i < d; ++i) {
    Vector left = zero();
    Vector right = zero();
    for (std::size_t u = 0; u < d; ++u) {
      if (unit_[u].is_zero()) continue;
      add_sparse(left, unit_[u], product(u, i));
      add_sparse(right, unit_[u], product(i, u));
    }
    Vector e = basis_vector(i);
    if (left != e) return AxiomFailure{AxiomFailure::Kind::LeftUnit, {i}};
    if (right != e) return AxiomFailure{AxiomFailure::Kind::RightUnit, {i}};
  }
  Vector lhs(d);
  Vector rhs(d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const SparseVector& ij = product(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        std::fill(lhs.begin(), lhs.end(), field_.zero());
        std::fill(rhs.begin(), rhs.end(), field_.zero());
        for (const auto& [l, c] : ij) add_sparse(lhs, c, product(l, k));
        for (const auto& [l, c] : product(j, k)) add_sparse(rhs, c, product(i, l));
        if (lhs != rhs) return AxiomFailure{AxiomFailure::Kind::Associativity, {i, j, k}};
      }
    }
  }
  return std::nullopt;
}

bool same_structure(const Algebra& a, const Algebra& b) { return !first_structure_difference(a, b).has_value() && a.unit() == b.unit(); }

std::optional<std::pair<std::size_t, std::size_t>> first_structure_difference(const Algebra& a, const Algebra& b) {
  if (a.dim() != b.dim() || a.field() != b.field()) return std::make_pair(a.dim(), b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a.product(i, j) != b.product(i, j)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- morphisms

MorphismReport check_morphism(const AlgebraPtr& source, const AlgebraPtr& target, const Matrix& matrix) {
  MorphismReport rep;
  if (matrix.rows() != source->dim() || matrix.cols() != target->dim()) {
    rep.ok = false;
    rep.failure = "shape";
    return rep;
  }
  if (vec_mat(source->unit(), matrix) != target->unit()) {
    rep.ok = false;
    rep.failure = "unit";
    return rep;
  }
  const std::size_t d = source->dim();
  std::vector<Vector> images(d);
  for (std::size_t i = 0; i < d; ++i) images[i] = matrix.row(i);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix li = target->left_mult_matrix(images[i]);
    for (std::size_t j = 0; j < d; ++j) {
      Vector lhs = zero_vector(target->field(), target->dim());
      for (const auto& [k, c] : source->product(i, j)) axpy(lhs, c, images[k]);
      if (lhs != vec_mat(images[j], li)) {
        rep.ok = false;
        rep.failure = "multiplicativity";
        rep.witness = {i, j};
        return rep;
      }
    }
  }
  return rep;
}

MorphismReport check_morphism(const AlgebraMorphism& f) { return check_morphism(f.source(), f.target(), f.matrix()); }

AlgebraMorphism::AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, Matrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
  if (source_->field() != target_->field()) throw Error(ErrorCode::FieldMismatch, "morphism between algebras over different fields");
  MorphismReport rep = check_morphism(source_, target_, matrix_);
  if (!rep.ok) throw Error(ErrorCode::NotAMorphism, "map is not an algebra morphism (" + rep.failure + ")", rep.witness);
}

AlgebraMorphism AlgebraMorphism::trusted(AlgebraPtr source, AlgebraPtr target, Matrix matrix) {
  AlgebraMorphism f;
  f.source_ = std::move(source);
  f.target_ = std::move(target);
  f.matrix_ = std::move(matrix);
  return f;
}

AlgebraMorphism identity_morphism(const AlgebraPtr& a) {
  return AlgebraMorphism::trusted(a, a, Matrix::identity(a->field(), a->dim()));
}

AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g) {
  if (f.target()->dim() != g.source()->dim()) throw Error(ErrorCode::DimensionMismatch, "composition of incompatible morphisms");
  return AlgebraMorphism::trusted(f.source(), g.target(), f.matrix() * g.matrix());
}

// ---------------------------------------------------------------- constructors

AlgebraPtr ground_field_algebra(const Field& f) {
  return Algebra::make_trusted(f, {"1"}, {SparseVector{{0, f.one()}}}, Vector{f.one()});
}

AlgebraPtr matrix_algebra(const AlgebraPtr& a, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix size must be at least 1");
  const std::size_t d = a->dim();
  const std::size_t dim = n * n * d;
  const Field& f = a->field();
  std::vector<std::string> labels(dim);
  std::vector<SparseVector> mult(dim * dim);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::string e = n > 9 ? "E" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "."
                            : "E" + std::to_string(i + 1) + std::to_string(j + 1) + ".";
      for (std::size_t k = 0; k < d; ++k) labels[matrix_index(n, d, i, j, k)] = e + a->label(k);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        const std::size_t left = matrix_index(n, d, i, j, k);
        for (std::size_t l = 0; l < n; ++l) {
          for (std::size_t m = 0; m < d; ++m) {
            const std::size_t right = matrix_index(n, d, j, l, m);
            SparseVector prod;
            for (const auto& [q, c] : a->product(k, m)) {
              prod.emplace_back(static_cast<std::uint32_t>(matrix_index(n, d, i, l, q)), c);
            }
            mult[left * dim + right] = std::move(prod);
          }
        }
      }
    }
  }
  Vector unit(dim, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < d; ++k) unit[matrix_index(n, d, i, i, k)] = a->unit()[k];
  }
  // E_ij (x) b_k products vanish unless the inner indices match, so the
  // associativity and unit laws reduce to those of `a`.
  return Algebra::make_trusted(f, std::move(labels), std::move(mult), std::move(unit));
}

Subalgebra subalgebra_from_spanning(const AlgebraPtr& a, const std::vector<Vector>& vectors, std::vector<std::string> labels) {
  const Field& f = a->field();
  EchelonBasis span(f, a->dim(), true);
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != a->dim()) throw Error(ErrorCode::DimensionMismatch, "spanning vector length mismatch");
    if (span.insert(vectors[i])) chosen.push_back(i);
  }
  const std::size_t d = chosen.size();
  std::vector<Vector> basis;
  for (auto i : chosen) basis.push_back(vectors[i]);
  std::vector<SparseVector> mult(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix li = a->left_mult_matrix(basis[i]);
    for (std::size_t j = 0; j < d; ++j) {
      auto coords = span.express(vec_mat(basis[j], li));
      if (!coords) throw Error(ErrorCode::NotClosed, "span is not closed under multiplication", {i, j});
      mult[i * d + j] = to_sparse(*coords);
    }
  }
  auto unit = span.express(a->unit());
  if (!unit) throw Error(ErrorCode::UnitMissing, "span does not contain the unit");
  std::vector<std::string> names;
  if (labels.size() == vectors.size()) {
    for (auto i : chosen) names.push_back(labels[i]);
  } else if (labels.size() == d) {
    names = std::move(labels);
  } else {
    for (std::size_t i = 0; i < d; ++i) {
      // A spanning vector equal to a basis vector keeps its label.
      const Vector& v = basis[i];
      SparseVector sv = to_sparse(v);
      if (sv.size() == 1 && sv[0].second.is_one()) {
        names.push_back(a->label(sv[0].first));
      } else {
        names.push_back(default_label(i));
      }
    }
  }
  AlgebraPtr sub = Algebra::make_trusted(f, std::move(names), std::move(mult), std::move(*unit));
  Matrix inc = Matrix::from_rows(f, basis, a->dim());
  return Subalgebra{sub, AlgebraMorphism::trusted(sub, a, std::move(inc)), std::move(chosen)};
}

AlgebraPtr opposite(const AlgebraPtr& a) {
  const std::size_t d = a->dim();
  std::vector<SparseVector> mult(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) mult[i * d + j] = a->product(j, i);
  }
  return Algebra::make_trusted(a->field(), a->labels(), std::move(mult), a->unit());
}

ProductAlgebra product(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->field() != b->field()) throw Error(ErrorCode::FieldMismatch, "product of algebras over different fields");
  const Field& f = a->field();
  const std::size_t da = a->dim();
  const std::size_t db = b->dim();
  const std::size_t d = da + db;
  std::vector<std::string> labels;
  for (const auto& l : a->labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : b->labels()) labels.push_back("(0," + l + ")");
  std::vector<SparseVector> mult(d * d);
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) mult[i * d + j] = a->product(i, j);
  }
  for (std::size_t i = 0; i < db; ++i) {
    for (std::size_t j = 0; j < db; ++j) {
      SparseVector sv;
      for (const auto& [k, c] : b->product(i, j)) sv.emplace_back(static_cast<std::uint32_t>(da + k), c);
      mult[(da + i) * d + da + j] = std::move(sv);
    }
  }
  Vector unit = concat(a->unit(), b->unit());
  AlgebraPtr p = Algebra::make_trusted(f, std::move(labels), std::move(mult), std::move(unit));
  Matrix p1(f, d, da);
  Matrix p2(f, d, db);
  for (std::size_t i = 0; i < da; ++i) p1(i, i) = f.one();
  for (std::size_t i = 0; i < db; ++i) p2(da + i, i) = f.one();
  return ProductAlgebra{p, AlgebraMorphism::trusted(p, a, std::move(p1)), AlgebraMorphism::trusted(p, b, std::move(p2))};
}

AlgebraPtr transport(const AlgebraPtr& a, const Matrix& basis, std::vector<std::string> labels) {
  const std::size_t d = a->dim();
  Matrix inv = inverse(basis);
  std::vector<SparseVector> mult(d * d);
  std::vector<Vector> rows = basis.row_list();
  for (std::size_t i = 0; i < d; ++i) {
    Matrix li = a->left_mult_matrix(rows[i]);
    for (std::size_t j = 0; j < d; ++j) mult[i * d + j] = to_sparse(vec_mat(vec_mat(rows[j], li), inv));
  }
  Vector unit = vec_mat(a->unit(), inv);
  if (labels.size() != d) labels.clear();
  return Algebra::make_trusted(a->field(), std::move(labels), std::move(mult), std::move(unit));
}

QuotientAlgebra quotient_algebra(const AlgebraPtr& a, const std::vector<Vector>& ideal) {
  const Field& f = a->field();
  const std::size_t d = a->dim();
  Subspace span(f, d, ideal);
  for (std::size_t i = 0; i < span.dim(); ++i) {
    const Vector& v = span.basis()[i];
    for (std::size_t k = 0; k < d; ++k) {
      Vector b = a->basis_vector(k);
      if (!span.contains(a->multiply(v, b)) || !span.contains(a->multiply(b, v))) {
        throw Error(ErrorCode::NotIdeal, "subspace is not a two-sided ideal", {i, k});
      }
    }
  }
  QuotientPresentation q = quotient_space(f, d, span.basis());
  const std::size_t n = q.dim;
  std::vector<SparseVector> mult(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vector prod = to_dense(f, a->product(q.basis_coordinates[i], q.basis_coordinates[j]), d);
      mult[i * n + j] = to_sparse(q.project(prod));
    }
  }
  std::vector<std::string> labels;
  for (auto c : q.basis_coordinates) labels.push_back(a->label(c));
  Vector unit = q.project(a->unit());
  return QuotientAlgebra{Algebra::make_trusted(f, std::move(labels), std::move(mult), std::move(unit)), std::move(q)};
}

std::vector<std::size_t> algebra_generators(const Algebra& a) {
  const std::size_t d = a.dim();
  const Field& f = a.field();
  std::vector<std::size_t> gens;
  if (d == 0) return gens;
  // The generated subalgebra is the closure of span{1} under right
  // multiplication by the generators.
  EchelonBasis span(f, d);
  std::vector<Vector> words;
  std::vector<Matrix> right;  // right multiplication by each generator
  auto close = [&](std::size_t from_word, std::size_t from_gen) {
    // New generators act on all existing words; every word acts with all generators.
    for (std::size_t w = 0; w < words.size(); ++w) {
      for (std::size_t g = (w < from_word ? from_gen : 0); g < right.size(); ++g) {
        Vector v = vec_mat(words[w], right[g]);
        if (span.insert(v)) words.push_back(std::move(v));
      }
    }
  };
  if (span.insert(a.unit())) words.push_back(a.unit());
  close(words.size(), 0);
  for (std::size_t i = 0; i < d && span.rank() < d; ++i) {
    Vector e = a.basis_vector(i);
    if (span.contains(e)) continue;
    gens.push_back(i);
    right.push_back(a.right_mult_basis(i));
    close(words.size(), right.size() - 1);
  }
  return gens;
}

}  // namespace excon
