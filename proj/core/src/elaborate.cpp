#include "excon/elaborate.hpp"

#include <cctype>

#include "excon/constructions.hpp"
#include "excon/error.hpp"

namespace excon {

DeclKind Environment::kind_of(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(ErrorCode::UnresolvedReference, "unknown name '" + name + "'");
  return it->second.first;
}

template <class T>
const T& Environment::get(const std::string& name, DeclKind kind) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw Error(ErrorCode::UnresolvedReference, "unknown name '" + name + "'");
  if (it->second.first != kind) {
    throw Error(ErrorCode::TypeMismatch, "'" + name + "' is a " + std::string(to_string(it->second.first)) + ", expected a " +
                                             std::string(to_string(kind)));
  }
  return std::get<T>(it->second.second);
}

const AlgebraEntry& Environment::algebra(const std::string& n) const { return get<AlgebraEntry>(n, DeclKind::Algebra); }
const AlgebraMorphism& Environment::morphism(const std::string& n) const { return get<AlgebraMorphism>(n, DeclKind::Morphism); }
const ModuleEntry& Environment::module(const std::string& n) const { return get<ModuleEntry>(n, DeclKind::Module); }
const ModuleMap& Environment::map(const std::string& n) const { return get<ModuleMap>(n, DeclKind::Map); }
const Bimodule& Environment::bimodule(const std::string& n) const { return get<Bimodule>(n, DeclKind::Bimodule); }
const ElementEntry& Environment::element(const std::string& n) const { return get<ElementEntry>(n, DeclKind::Element); }
const ContextEntry& Environment::context(const std::string& n) const {
  if (const Error* e = failure(n)) throw *e;
  return get<ContextEntry>(n, DeclKind::Context);
}

void Environment::add_failure(const std::string& name, const Error& error) {
  add(name, DeclKind::Context, ContextEntry{});
  failures_.emplace(name, error);
}

const Error* Environment::failure(const std::string& name) const {
  auto it = failures_.find(name);
  return it == failures_.end() ? nullptr : &it->second;
}

bool is_verification_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotExact:
    case ErrorCode::NotRigid:
    case ErrorCode::NotInjective:
    case ErrorCode::DegenerateQuotient:
    case ErrorCode::IncompatiblePairings:
    case ErrorCode::NotIdeal:
    case ErrorCode::NotBimoduleSplitting:
    case ErrorCode::NeitherSurjective:
    case ErrorCode::InvalidBimodule:
    case ErrorCode::InternalInconsistency:
      return true;
    default:
      return false;
  }
}

std::vector<std::string> Environment::labels_of(const std::string& name) const {
  auto it = labels_.find(name);
  return it == labels_.end() ? std::vector<std::string>{} : it->second;
}

void Environment::add(const std::string& name, DeclKind kind, Entry entry, std::vector<std::string> labels) {
  if (entries_.count(name)) throw Error(ErrorCode::DuplicateName, "'" + name + "' is already declared");
  entries_.emplace(name, std::make_pair(kind, std::move(entry)));
  labels_[name] = std::move(labels);
  order_.push_back(name);
}

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

class Elaborator {
 public:
  explicit Elaborator(Environment& env) : env_(env) {}

  void run(const Declaration& d) {
    switch (d.kind) {
      case DeclKind::Field: break;
      case DeclKind::Algebra: algebra(d); break;
      case DeclKind::Morphism: env_.add(d.name, d.kind, morphism(d)); break;
      case DeclKind::Module: module(d); break;
      case DeclKind::Map: env_.add(d.name, d.kind, map(d)); break;
      case DeclKind::Bimodule: bimodule(d); break;
      case DeclKind::Element: element(d); break;
      case DeclKind::Context: env_.add(d.name, d.kind, context(d)); break;
    }
  }

 private:
  Environment& env_;
  const Field& field() const { return env_.field; }

  static const std::string& name(const Declaration& d, std::size_t i) { return std::get<NameArg>(d.args.at(i)).name; }
  static std::size_t integer(const Declaration& d, std::size_t i) { return std::get<std::size_t>(d.args.at(i)); }
  static const std::vector<LinComb>& vectors(const Declaration& d, std::size_t i) {
    return std::get<std::vector<LinComb>>(d.args.at(i));
  }
  static Side side(const Declaration& d, std::size_t i) { return name(d, i) == "left" ? Side::Left : Side::Right; }

  Scalar scalar(const mpq_class& q) const { return field().from_rational(q); }

  std::size_t index(const std::string& ref, const std::vector<std::string>& labels, std::size_t dim) const {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == ref) return i;
    }
    if (all_digits(ref)) {
      if (ref.size() > 9 || std::stoul(ref) >= dim) {
        throw Error(ErrorCode::DimensionMismatch, "basis index " + ref + " out of range (dimension " + std::to_string(dim) + ")");
      }
      return std::stoul(ref);
    }
    throw Error(ErrorCode::UnresolvedReference, "unknown basis label '" + ref + "'");
  }

  Vector vector(const LinComb& v, const std::vector<std::string>& labels, std::size_t dim) const {
    Vector out = zero_vector(field(), dim);
    for (const auto& t : v) out[index(t.ref, labels, dim)] += scalar(t.coefficient);
    return out;
  }

  /// Dimension and labels of whatever `n` names, for vector literals.
  std::size_t dim_of(const std::string& n) const {
    switch (env_.kind_of(n)) {
      case DeclKind::Algebra: return env_.algebra(n).algebra->dim();
      case DeclKind::Module: return env_.module(n).module.dim();
      case DeclKind::Bimodule: return env_.bimodule(n).dim();
      default: throw Error(ErrorCode::TypeMismatch, "'" + n + "' has no basis");
    }
  }

  std::vector<Vector> vectors_in(const std::string& owner, const std::vector<LinComb>& vs) const {
    std::vector<Vector> out;
    for (const auto& v : vs) out.push_back(vector(v, env_.labels_of(owner), dim_of(owner)));
    return out;
  }

  Matrix matrix(const MatrixLiteral& m, std::size_t rows, std::size_t cols) const {
    if (m.size() != rows) {
      throw Error(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(m.size()) + " rows, expected " + std::to_string(rows));
    }
    Matrix out(field(), rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (m[i].size() != cols) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix row " + std::to_string(i) + " has " + std::to_string(m[i].size()) + " entries, expected " + std::to_string(cols));
      }
      for (std::size_t j = 0; j < cols; ++j) out(i, j) = scalar(m[i][j]);
    }
    return out;
  }

  void add_algebra(const std::string& n, AlgebraEntry e) {
    if (e.algebra->dim() > env_.max_dim) {
      throw Error(ErrorCode::DimensionCap, "dimension " + std::to_string(e.algebra->dim()) + " exceeds the cap " + std::to_string(env_.max_dim),
                  {e.algebra->dim(), env_.max_dim});
    }
    auto labels = e.algebra->labels();
    env_.add(n, DeclKind::Algebra, std::move(e), std::move(labels));
  }

  void algebra(const Declaration& d) {
    AlgebraEntry e;
    if (d.op == "structconst") {
      const auto& b = std::get<StructConstBody>(d.args[0]);
      if (b.dim > env_.max_dim) throw Error(ErrorCode::DimensionCap, "dimension exceeds the cap", {b.dim, env_.max_dim});
      std::vector<std::string> labels = b.labels;
      if (labels.empty()) {
        for (std::size_t i = 0; i < b.dim; ++i) labels.push_back(std::to_string(i));
      }
      if (labels.size() != b.dim) throw Error(ErrorCode::DimensionMismatch, "number of labels differs from dim");
      std::vector<std::vector<Vector>> mult(b.dim, std::vector<Vector>(b.dim, zero_vector(field(), b.dim)));
      for (const auto& p : b.products) {
        mult[index(p.left, labels, b.dim)][index(p.right, labels, b.dim)] = vector(p.value, labels, b.dim);
      }
      e.algebra = Algebra::make(field(), labels, mult, vector(b.unit, labels, b.dim));
    } else if (d.op == "quiver") {
      const auto& b = std::get<QuiverBody>(d.args[0]);
      QuiverPresentation q;
      q.field = field();
      q.vertices = b.vertices;
      for (const auto& a : b.arrows) q.arrows.push_back({a.name, a.source, a.target});
      for (const auto& r : b.relations) {
        std::vector<PathTerm> rel;
        for (const auto& t : r) rel.push_back({scalar(t.coefficient), t.factors});
        q.relations.push_back(std::move(rel));
      }
      if (b.bound) q.max_length = *b.bound;
      e.algebra = elaborate_quiver(q).algebra;
    } else if (d.op == "ground") {
      e.algebra = ground_field_algebra(field());
    } else if (d.op == "matrixalg") {
      const AlgebraPtr& a = env_.algebra(name(d, 0)).algebra;
      const std::size_t n = integer(d, 1);
      if (n == 0) throw Error(ErrorCode::InvalidArgument, "matrix size must be at least 1");
      if (a->dim() * n * n > env_.max_dim) {
        throw Error(ErrorCode::DimensionCap,
                    "dimension " + std::to_string(a->dim() * n * n) + " exceeds the cap " + std::to_string(env_.max_dim),
                    {a->dim() * n * n, env_.max_dim});
      }
      e.algebra = matrix_algebra(a, n);
    } else if (d.op == "triangular") {
      e.algebra = triangular_algebra(env_.bimodule(name(d, 0))).algebra;
    } else if (d.op == "sub") {
      Subalgebra s = subalgebra_from_spanning(env_.algebra(name(d, 0)).algebra, vectors_in(name(d, 0), vectors(d, 1)));
      e.algebra = s.algebra;
      e.inclusion = s.inclusion;
    } else if (d.op == "quotient") {
      const AlgebraPtr& a = env_.algebra(name(d, 0)).algebra;
      QuotientAlgebra q = quotient_algebra(a, vectors_in(name(d, 0), vectors(d, 1)));
      e.algebra = q.algebra;
      e.inclusion = AlgebraMorphism(a, q.algebra, q.presentation.projection);
      e.quotient = q.presentation;
    } else if (d.op == "product") {
      ProductAlgebra p = product(env_.algebra(name(d, 0)).algebra, env_.algebra(name(d, 1)).algebra);
      e.algebra = p.algebra;
      e.product = p;
    }
    add_algebra(d.name, std::move(e));
  }

  AlgebraMorphism morphism(const Declaration& d) const {
    if (d.op == "linear") {
      const AlgebraPtr& a = env_.algebra(name(d, 0)).algebra;
      const AlgebraPtr& b = env_.algebra(name(d, 1)).algebra;
      return AlgebraMorphism(a, b, matrix(std::get<MatrixLiteral>(d.args[2]), a->dim(), b->dim()));
    }
    if (d.op == "identity") return identity_morphism(env_.algebra(name(d, 0)).algebra);
    if (d.op == "compose") return compose(env_.morphism(name(d, 0)), env_.morphism(name(d, 1)));
    const AlgebraEntry& a = env_.algebra(name(d, 0));
    if (d.op == "inclusion") {
      if (!a.inclusion || a.quotient) throw Error(ErrorCode::TypeMismatch, "'" + name(d, 0) + "' is not a subalgebra");
      return *a.inclusion;
    }
    if (d.op == "projection") {
      if (!a.quotient) throw Error(ErrorCode::TypeMismatch, "'" + name(d, 0) + "' is not a quotient algebra");
      return *a.inclusion;
    }
    if (d.op == "proj1" || d.op == "proj2") {
      if (!a.product) throw Error(ErrorCode::TypeMismatch, "'" + name(d, 0) + "' is not a product");
      return d.op == "proj1" ? a.product->proj1 : a.product->proj2;
    }
    // between
    const AlgebraEntry& b = env_.algebra(name(d, 1));
    if (!a.inclusion || a.quotient || !b.inclusion || b.quotient) {
      throw Error(ErrorCode::TypeMismatch, "'between' needs two subalgebras of one algebra");
    }
    return inclusion_between(Subalgebra{a.algebra, *a.inclusion, {}}, Subalgebra{b.algebra, *b.inclusion, {}});
  }

  void module(const Declaration& d) {
    std::vector<std::string> labels;
    ModuleEntry e{Module::zero(ground_field_algebra(field()), Side::Left), std::nullopt, std::nullopt};
    if (d.op == "regular") {
      const AlgebraPtr& a = env_.algebra(name(d, 0)).algebra;
      e.module = Module::regular(a, side(d, 1));
      labels = a->labels();
    } else if (d.op == "restrict") {
      e.module = restrict_module(env_.module(name(d, 0)).module, env_.morphism(name(d, 1)));
      labels = env_.labels_of(name(d, 0));
    } else if (d.op == "quotient") {
      const Module& x = env_.module(name(d, 0)).module;
      QuotientModule q = quotient_module(x, vectors_in(name(d, 0), vectors(d, 1)));
      e.module = q.module;
      e.quotient_of = q;
      e.parent = x;
    } else if (d.op == "left" || d.op == "right") {
      const Bimodule& b = env_.bimodule(name(d, 0));
      e.module = d.op == "left" ? b.as_left() : b.as_right();
      labels = env_.labels_of(name(d, 0));
    } else if (d.op == "actions") {
      const AlgebraPtr& a = env_.algebra(name(d, 0)).algebra;
      const auto& body = std::get<ActionsBody>(d.args[2]);
      std::vector<Matrix> act(a->dim(), Matrix(field(), body.dim, body.dim));
      for (const auto& entry : body.entries) {
        if (entry.tag != "act") throw Error(ErrorCode::InvalidArgument, "module actions are written 'act i = [...]'");
        if (entry.index >= a->dim()) throw Error(ErrorCode::DimensionMismatch, "action index out of range");
        act[entry.index] = matrix(entry.matrix, body.dim, body.dim);
      }
      e.module = Module::make(a, side(d, 1), body.dim, std::move(act));
    }
    env_.add(d.name, d.kind, std::move(e), std::move(labels));
  }

  ModuleMap map(const Declaration& d) const {
    if (d.op == "linear") {
      const Module& y = env_.module(name(d, 0)).module;
      const Module& x = env_.module(name(d, 1)).module;
      Matrix f = matrix(std::get<MatrixLiteral>(d.args[2]), y.dim(), x.dim());
      if (!is_module_map(y, x, f)) throw Error(ErrorCode::NotAMorphism, "the matrix does not commute with the actions");
      return ModuleMap{y, x, f};
    }
    if (d.op == "projection") {
      const ModuleEntry& q = env_.module(name(d, 0));
      if (!q.quotient_of) throw Error(ErrorCode::TypeMismatch, "'" + name(d, 0) + "' is not a quotient module");
      return ModuleMap{*q.parent, q.module, q.quotient_of->presentation.projection};
    }
    const AlgebraPtr& a = env_.algebra(name(d, 0)).algebra;
    const auto& vs = vectors_in(name(d, 0), vectors(d, 1));
    if (vs.size() != 1) throw Error(ErrorCode::InvalidArgument, "expected exactly one element");
    if (d.op == "rightmult") {
      const Module reg = Module::regular(a, Side::Left);
      return ModuleMap{reg, reg, a->right_mult_matrix(vs[0])};
    }
    const Module reg = Module::regular(a, Side::Right);
    return ModuleMap{reg, reg, a->left_mult_matrix(vs[0])};
  }

  void bimodule(const Declaration& d) {
    if (d.op == "regular") {
      const AlgebraPtr& a = env_.algebra(name(d, 0)).algebra;
      env_.add(d.name, d.kind, Bimodule::regular(a), a->labels());
    } else if (d.op == "restrict") {
      env_.add(d.name, d.kind, restrict_bimodule(env_.bimodule(name(d, 0)), env_.morphism(name(d, 1)), env_.morphism(name(d, 2))),
               env_.labels_of(name(d, 0)));
    } else {
      const AlgebraPtr& s = env_.algebra(name(d, 0)).algebra;
      const AlgebraPtr& t = env_.algebra(name(d, 1)).algebra;
      const auto& body = std::get<ActionsBody>(d.args[2]);
      std::vector<Matrix> left(s->dim(), Matrix(field(), body.dim, body.dim));
      std::vector<Matrix> right(t->dim(), Matrix(field(), body.dim, body.dim));
      for (const auto& entry : body.entries) {
        if (entry.tag == "act") throw Error(ErrorCode::InvalidArgument, "bimodule actions are written 'left i' or 'right j'");
        auto& slot = entry.tag == "left" ? left : right;
        if (entry.index >= slot.size()) throw Error(ErrorCode::DimensionMismatch, "action index out of range");
        slot[entry.index] = matrix(entry.matrix, body.dim, body.dim);
      }
      env_.add(d.name, d.kind, Bimodule::make(s, t, body.dim, std::move(left), std::move(right)));
    }
  }

  void element(const Declaration& d) {
    const std::string& owner = name(d, 0);
    if (d.op == "unit") {
      env_.add(d.name, d.kind, ElementEntry{owner, env_.algebra(owner).algebra->unit()});
      return;
    }
    const auto vs = vectors_in(owner, vectors(d, 1));
    if (vs.size() != 1) throw Error(ErrorCode::InvalidArgument, "expected exactly one element");
    env_.add(d.name, d.kind, ElementEntry{owner, vs[0]});
  }

  ContextEntry context(const Declaration& d) const {
    ContextEntry c;
    c.family = d.op;
    if (d.op == "exact") {
      const Bimodule& m = env_.bimodule(name(d, 2));
      const ElementEntry& e = env_.element(name(d, 3));
      if (e.value.size() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "the element does not live in the bimodule");
      c.context = check_exact_context(env_.morphism(name(d, 0)), env_.morphism(name(d, 1)), m, e.value);
    } else if (d.op == "extension") {
      c.extension = context_from_extension(env_.morphism(name(d, 0)));
      c.context = c.extension->context;
    } else if (d.op == "rigid") {
      c.rigid = context_from_rigid(env_.map(name(d, 0)));
      c.context = c.rigid->context;
    } else if (d.op == "milnor") {
      c.milnor = context_from_milnor(env_.morphism(name(d, 0)), env_.morphism(name(d, 1)));
      c.context = c.milnor->context;
    } else if (d.op == "pure") {
      auto ext = [&](std::size_t i) {
        const AlgebraMorphism& f = env_.morphism(name(d, i));
        std::vector<Vector> ideal;
        for (const auto& v : vectors(d, i + 1)) ideal.push_back(vector(v, f.target()->labels(), f.target()->dim()));
        return PureExtension{f, ideal};
      };
      c.pure = context_from_strictly_pure(ext(0), ext(2));
      c.context = c.pure->context;
    } else {
      const auto& body = std::get<MoritaBody>(d.args[0]);
      const AlgebraPtr& a = env_.algebra(body.a).algebra;
      const AlgebraPtr& cc = env_.algebra(body.c).algebra;
      const Bimodule& x = env_.bimodule(body.x);
      const Bimodule& y = env_.bimodule(body.y);
      std::vector<std::vector<Vector>> f(x.dim(), std::vector<Vector>(y.dim(), a->zero()));
      std::vector<std::vector<Vector>> g(y.dim(), std::vector<Vector>(x.dim(), cc->zero()));
      for (const auto& p : body.pairings) {
        auto& table = p.which == 'f' ? f : g;
        if (p.first >= table.size() || (!table.empty() && p.second >= table[0].size())) {
          throw Error(ErrorCode::DimensionMismatch, std::string("pairing ") + p.which + " index out of range");
        }
        const AlgebraPtr& into = p.which == 'f' ? a : cc;
        table[p.first][p.second] = vector(p.value, into->labels(), into->dim());
      }
      c.morita = context_from_morita(MoritaData{a, cc, x, y, f, g});
      c.context = c.morita->context;
    }
    return c;
  }
};

}  // namespace

Environment elaborate(const PresentationFile& file, std::optional<Field> field_override, std::size_t max_dim,
                      bool defer_context_failures) {
  Environment env;
  env.max_dim = max_dim;
  for (const auto& d : file.declarations) {
    if (d.kind == DeclKind::Field) env.field = Field::parse(d.name);
  }
  if (field_override) env.field = *field_override;
  Elaborator el(env);
  for (const auto& d : file.declarations) {
    try {
      el.run(d);
    } catch (const Error& e) {
      if (defer_context_failures && d.kind == DeclKind::Context && is_verification_failure(e.code())) {
        env.add_failure(d.name, e);
        continue;
      }
      throw Error(e.code(), "line " + std::to_string(d.pos.line) + ", " + std::string(to_string(d.kind)) + " '" + d.name + "': " + e.what(),
                  e.witness());
    }
  }
  return env;
}

}  // namespace excon
