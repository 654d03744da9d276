#include "excon/constructions.hpp"

#include <algorithm>
#include <map>
#include <optional>

#include "excon/error.hpp"

namespace excon {

// --------------------------------------------------------------- triangular

Vector TriangularAlgebra::embed(const Vector& s, const Vector& x, const Vector& t) const {
  Vector out = concat(concat(s, x), t);
  if (out.size() != algebra->dim()) throw Error(ErrorCode::DimensionMismatch, "triangular component has the wrong length");
  return out;
}

TriangularAlgebra triangular_algebra(const Bimodule& m) {
  BimoduleReport rep = check_bimodule(m);
  if (!rep.ok) throw Error(ErrorCode::InvalidBimodule, "triangular algebra of an invalid bimodule: " + rep.detail, rep.witness);
  const Algebra& s = *m.left_algebra();
  const Algebra& t = *m.right_algebra();
  if (s.field() != t.field()) throw Error(ErrorCode::FieldMismatch, "bimodule algebras over different fields");
  const Field& f = s.field();
  TriangularAlgebra out;
  out.dim_s = s.dim();
  out.dim_m = m.dim();
  out.dim_t = t.dim();
  const std::size_t om = out.offset_m();
  const std::size_t ot = out.offset_t();
  const std::size_t d = ot + out.dim_t;
  auto shift = [](const SparseVector& v, std::size_t by) {
    SparseVector r;
    for (const auto& [i, c] : v) r.emplace_back(static_cast<std::uint32_t>(i + by), c);
    return r;
  };
  std::vector<SparseVector> mult(d * d);
  for (std::size_t i = 0; i < out.dim_s; ++i) {
    for (std::size_t j = 0; j < out.dim_s; ++j) mult[i * d + j] = s.product(i, j);
    for (std::size_t a = 0; a < out.dim_m; ++a) mult[i * d + om + a] = shift(to_sparse(m.left_actions()[i].row(a)), om);
  }
  for (std::size_t a = 0; a < out.dim_m; ++a) {
    for (std::size_t j = 0; j < out.dim_t; ++j) mult[(om + a) * d + ot + j] = shift(to_sparse(m.right_actions()[j].row(a)), om);
  }
  for (std::size_t i = 0; i < out.dim_t; ++i) {
    for (std::size_t j = 0; j < out.dim_t; ++j) mult[(ot + i) * d + ot + j] = shift(t.product(i, j), ot);
  }
  std::vector<std::string> labels;
  for (const auto& l : s.labels()) labels.push_back("S." + l);
  for (std::size_t a = 0; a < out.dim_m; ++a) labels.push_back("M." + std::to_string(a));
  for (const auto& l : t.labels()) labels.push_back("T." + l);
  Vector zero_m(out.dim_m, f.zero());
  out.e1 = concat(concat(s.unit(), zero_m), zero_vector(f, out.dim_t));
  out.e2 = concat(concat(zero_vector(f, out.dim_s), zero_m), t.unit());
  out.algebra = Algebra::make_trusted(f, std::move(labels), std::move(mult), add(out.e1, out.e2));
  return out;
}

// ------------------------------------------------------------------- quivers

namespace {

struct Path {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<std::size_t> arrows;

  // Length first, then lexicographic in arrow order, then start vertex.
  bool operator<(const Path& o) const {
    if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
    if (arrows != o.arrows) return arrows < o.arrows;
    return start < o.start;
  }
  bool operator==(const Path& o) const { return start == o.start && arrows == o.arrows; }
};

using Combination = std::map<Path, Scalar>;

struct Rule {
  Path lead;
  Combination rest;  // lead = rest in the quotient
};

class QuiverBuilder {
 public:
  explicit QuiverBuilder(const QuiverPresentation& q) : q_(q) {
    for (std::size_t v = 0; v < q.vertices.size(); ++v) {
      if (!vertex_.emplace(q.vertices[v], v).second) throw Error(ErrorCode::DuplicateName, "duplicate vertex " + q.vertices[v]);
    }
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
      const auto& ar = q.arrows[a];
      if (vertex_.count(ar.name) || !arrow_.emplace(ar.name, a).second) {
        throw Error(ErrorCode::DuplicateName, "duplicate quiver name " + ar.name);
      }
      source_.push_back(vertex_of(ar.source));
      target_.push_back(vertex_of(ar.target));
    }
  }

  QuiverAlgebra build() {
    make_rules();
    enumerate_basis();
    const std::size_t d = basis_.size();
    const Field& f = q_.field;
    std::map<Path, std::size_t> index;
    for (std::size_t i = 0; i < d; ++i) index.emplace(basis_[i], i);
    std::vector<SparseVector> mult(d * d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (basis_[i].end != basis_[j].start) continue;
        Combination c;
        c.emplace(concat_paths(basis_[i], basis_[j]), f.one());
        normalize(c);
        SparseVector sv;
        for (const auto& [p, coeff] : c) sv.emplace_back(static_cast<std::uint32_t>(index.at(p)), coeff);
        std::sort(sv.begin(), sv.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        mult[i * d + j] = std::move(sv);
      }
    }
    Vector unit(d, f.zero());
    QuiverAlgebra out;
    for (std::size_t v = 0; v < q_.vertices.size(); ++v) {
      auto it = index.find(trivial(v));
      out.vertex_basis.push_back(it == index.end() ? static_cast<std::size_t>(-1) : it->second);
      if (it != index.end()) unit[it->second] = f.one();
    }
    for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
      auto it = index.find(Path{source_[a], target_[a], {a}});
      out.arrow_basis.push_back(it == index.end() ? static_cast<std::size_t>(-1) : it->second);
    }
    std::vector<std::string> labels;
    for (const auto& p : basis_) labels.push_back(label(p));
    try {
      out.algebra = Algebra::make(f, std::move(labels), std::move(mult), std::move(unit));
    } catch (const Error& e) {
      throw Error(ErrorCode::BadRelation,
                  "relations do not rewrite confluently under length-lex order (" + std::string(e.what()) + ")",
                  e.witness());
    }
    return out;
  }

 private:
  std::size_t vertex_of(const std::string& name) const {
    auto it = vertex_.find(name);
    if (it == vertex_.end()) throw Error(ErrorCode::UnresolvedReference, "unknown vertex " + name);
    return it->second;
  }

  static Path trivial(std::size_t v) { return Path{v, v, {}}; }

  static Path concat_paths(const Path& a, const Path& b) {
    Path p{a.start, b.end, a.arrows};
    p.arrows.insert(p.arrows.end(), b.arrows.begin(), b.arrows.end());
    return p;
  }

  std::string label(const Path& p) const {
    if (p.arrows.empty()) return "e" + q_.vertices[p.start];
    std::string s;
    for (std::size_t i = 0; i < p.arrows.size(); ++i) s += (i ? "." : "") + q_.arrows[p.arrows[i]].name;
    return s;
  }

  Path term_path(const PathTerm& t, std::size_t rel) const {
    std::optional<Path> p;
    for (const auto& name : t.factors) {
      if (auto v = vertex_.find(name); v != vertex_.end()) {
        if (!p) {
          p = trivial(v->second);
        } else if (p->end != v->second) {
          throw Error(ErrorCode::BadRelation, "non-composable path in relation " + std::to_string(rel), {rel});
        }
        continue;
      }
      auto a = arrow_.find(name);
      if (a == arrow_.end()) throw Error(ErrorCode::UnresolvedReference, "unknown arrow or vertex " + name, {rel});
      const std::size_t i = a->second;
      if (!p) {
        p = Path{source_[i], target_[i], {i}};
      } else {
        if (p->end != source_[i]) {
          throw Error(ErrorCode::BadRelation, "non-composable path in relation " + std::to_string(rel), {rel});
        }
        p->arrows.push_back(i);
        p->end = target_[i];
      }
    }
    if (!p) throw Error(ErrorCode::BadRelation, "empty path in relation " + std::to_string(rel), {rel});
    return *p;
  }

  void make_rules() {
    const Field& f = q_.field;
    std::vector<Combination> rels;
    std::map<Path, std::size_t> columns;
    for (std::size_t r = 0; r < q_.relations.size(); ++r) {
      Combination c;
      std::optional<std::pair<std::size_t, std::size_t>> ends;
      for (const auto& t : q_.relations[r]) {
        Path p = term_path(t, r);
        if (ends && *ends != std::make_pair(p.start, p.end)) {
          throw Error(ErrorCode::BadRelation, "relation " + std::to_string(r) + " mixes paths with different endpoints", {r});
        }
        ends = std::make_pair(p.start, p.end);
        c[p] += t.coefficient;
        columns.emplace(p, 0);
      }
      rels.push_back(std::move(c));
    }
    // Columns in descending path order so pivots are leading paths.
    std::vector<Path> order;
    for (const auto& [p, unused] : columns) order.push_back(p);
    std::reverse(order.begin(), order.end());
    for (std::size_t i = 0; i < order.size(); ++i) columns[order[i]] = i;
    if (rels.empty() || order.empty()) return;
    Matrix m(f, rels.size(), order.size());
    for (std::size_t r = 0; r < rels.size(); ++r) {
      for (const auto& [p, c] : rels[r]) m(r, columns[p]) = c;
    }
    RrefResult red = rref(m);
    for (std::size_t r = 0; r < red.rank; ++r) {
      Rule rule;
      rule.lead = order[red.pivots[r]];
      for (std::size_t c = red.pivots[r] + 1; c < order.size(); ++c) {
        if (!red.reduced(r, c).is_zero()) rule.rest.emplace(order[c], -red.reduced(r, c));
      }
      rules_.push_back(std::move(rule));
    }
  }

  /// Position where rule's leading path occurs inside p, if any.
  static std::optional<std::size_t> occurrence(const Path& p, const Path& lead) {
    if (lead.arrows.empty()) {
      if (p == lead) return 0;
      return std::nullopt;
    }
    if (lead.arrows.size() > p.arrows.size()) return std::nullopt;
    auto it = std::search(p.arrows.begin(), p.arrows.end(), lead.arrows.begin(), lead.arrows.end());
    if (it == p.arrows.end()) return std::nullopt;
    return static_cast<std::size_t>(it - p.arrows.begin());
  }

  bool reducible(const Path& p) const {
    return std::any_of(rules_.begin(), rules_.end(), [&](const Rule& r) { return occurrence(p, r.lead).has_value(); });
  }

  void normalize(Combination& c) const {
    for (;;) {
      // Largest reducible path first.
      std::optional<std::pair<Path, std::pair<const Rule*, std::size_t>>> hit;
      for (auto it = c.rbegin(); it != c.rend() && !hit; ++it) {
        for (const auto& rule : rules_) {
          if (auto pos = occurrence(it->first, rule.lead)) {
            hit.emplace(it->first, std::make_pair(&rule, *pos));
            break;
          }
        }
      }
      if (!hit) return;
      const Path p = hit->first;
      const Rule& rule = *hit->second.first;
      const std::size_t pos = hit->second.second;
      const Scalar coeff = c.at(p);
      c.erase(p);
      Path prefix{p.start, p.start, {p.arrows.begin(), p.arrows.begin() + static_cast<long>(pos)}};
      if (!prefix.arrows.empty()) prefix.end = target_[prefix.arrows.back()];
      Path suffix{rule.lead.end, p.end, {p.arrows.begin() + static_cast<long>(pos + rule.lead.arrows.size()), p.arrows.end()}};
      for (const auto& [q, k] : rule.rest) {
        Path np = concat_paths(concat_paths(prefix, q), suffix);
        Scalar& slot = c[np];
        slot += coeff * k;
        if (slot.is_zero()) c.erase(np);
      }
    }
  }

  void enumerate_basis() {
    std::vector<Path> level;
    for (std::size_t v = 0; v < q_.vertices.size(); ++v) {
      if (!reducible(trivial(v))) level.push_back(trivial(v));
    }
    std::size_t length = 0;
    while (!level.empty()) {
      if (length > q_.max_length) {
        throw Error(ErrorCode::NotFiniteDimensional,
                    "irreducible path longer than " + std::to_string(q_.max_length) + ": " + label(level.front()));
      }
      basis_.insert(basis_.end(), level.begin(), level.end());
      std::vector<Path> next;
      for (const auto& p : level) {
        for (std::size_t a = 0; a < q_.arrows.size(); ++a) {
          if (source_[a] != p.end) continue;
          Path np = concat_paths(p, Path{source_[a], target_[a], {a}});
          if (!reducible(np)) next.push_back(std::move(np));
        }
      }
      std::sort(next.begin(), next.end());
      level = std::move(next);
      ++length;
    }
  }

  const QuiverPresentation& q_;
  std::map<std::string, std::size_t> vertex_;
  std::map<std::string, std::size_t> arrow_;
  std::vector<std::size_t> source_;
  std::vector<std::size_t> target_;
  std::vector<Rule> rules_;
  std::vector<Path> basis_;
};

}  // namespace

QuiverAlgebra elaborate_quiver(const QuiverPresentation& q) { return QuiverBuilder(q).build(); }

}  // namespace excon
