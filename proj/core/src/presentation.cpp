#include "excon/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "excon/error.hpp"

namespace excon {

std::string_view to_string(DeclKind k) {
  switch (k) {
    case DeclKind::Field: return "field";
    case DeclKind::Algebra: return "algebra";
    case DeclKind::Morphism: return "morphism";
    case DeclKind::Module: return "module";
    case DeclKind::Map: return "map";
    case DeclKind::Bimodule: return "bimodule";
    case DeclKind::Element: return "element";
    case DeclKind::Context: return "context";
  }
  return "?";
}

const Declaration* PresentationFile::find(const std::string& name) const {
  for (const auto& d : declarations) {
    if (d.kind != DeclKind::Field && d.name == name) return &d;
  }
  return nullptr;
}

namespace {

using K = ArgKind;

const std::map<DeclKind, std::vector<std::pair<std::string, std::vector<ArgKind>>>>& table() {
  static const std::map<DeclKind, std::vector<std::pair<std::string, std::vector<ArgKind>>>> t = {
      {DeclKind::Algebra,
       {{"structconst", {K::StructConst}},
        {"quiver", {K::Quiver}},
        {"ground", {}},
        {"matrixalg", {K::Name, K::Int}},
        {"triangular", {K::Name}},
        {"sub", {K::Name, K::Vectors}},
        {"quotient", {K::Name, K::Vectors}},
        {"product", {K::Name, K::Name}}}},
      {DeclKind::Morphism,
       {{"linear", {K::Name, K::ArrowToken, K::Name, K::Matrix}},
        {"inclusion", {K::Name}},
        {"identity", {K::Name}},
        {"between", {K::Name, K::Name}},
        {"compose", {K::Name, K::Name}},
        {"proj1", {K::Name}},
        {"proj2", {K::Name}},
        {"projection", {K::Name}}}},
      {DeclKind::Module,
       {{"regular", {K::Name, K::Side}},
        {"restrict", {K::Name, K::AlongToken, K::Name}},
        {"quotient", {K::Name, K::Vectors}},
        {"left", {K::Name}},
        {"right", {K::Name}},
        {"actions", {K::Name, K::Side, K::Actions}}}},
      {DeclKind::Map,
       {{"linear", {K::Name, K::ArrowToken, K::Name, K::Matrix}},
        {"projection", {K::Name}},
        {"rightmult", {K::Name, K::Vectors}},
        {"leftmult", {K::Name, K::Vectors}}}},
      {DeclKind::Bimodule,
       {{"regular", {K::Name}},
        {"restrict", {K::Name, K::AlongToken, K::Name, K::Name}},
        {"actions", {K::Name, K::Name, K::Actions}}}},
      {DeclKind::Element, {{"in", {K::Name, K::Vectors}}, {"unit", {K::Name}}}},
      {DeclKind::Context,
       {{"exact", {K::Name, K::Name, K::Name, K::Name}},
        {"extension", {K::Name}},
        {"rigid", {K::Name}},
        {"milnor", {K::Name, K::Name}},
        {"pure", {K::Name, K::Vectors, K::Name, K::Vectors}},
        {"morita", {K::Morita}}}},
  };
  return t;
}

// ------------------------------------------------------------------ lexing

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::String: return "\"" + t.text + "\"";
    default: return "'" + t.text + "'";
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.'; }

[[noreturn]] void syntax_error(SourcePos pos, const std::string& message) {
  throw Error(ErrorCode::SyntaxError, "line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message,
              {pos.line, pos.column});
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    const SourcePos start = pos;
    std::size_t j = i;
    if (ident_start(c)) {
      while (j < text.size() && ident_char(text[j])) ++j;
      out.push_back({Tok::Ident, std::string(text.substr(i, j - i)), start});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({Tok::Int, std::string(text.substr(i, j - i)), start});
    } else if (c == '"') {
      ++j;
      std::string s;
      while (j < text.size() && text[j] != '"' && text[j] != '\n') s += text[j++];
      if (j >= text.size() || text[j] != '"') syntax_error(start, "unterminated string");
      ++j;
      out.push_back({Tok::String, s, start});
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      j += 2;
      out.push_back({Tok::Punct, "->", start});
    } else if (std::string_view("{}[];,=*+-/:").find(c) != std::string_view::npos) {
      ++j;
      out.push_back({Tok::Punct, std::string(1, c), start});
    } else {
      syntax_error(start, std::string("unexpected character '") + c + "'");
    }
    advance(j - i);
  }
  out.push_back({Tok::End, "", pos});
  return out;
}

// ----------------------------------------------------------------- parsing

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  PresentationFile file() {
    PresentationFile out;
    bool field_seen = false;
    while (peek().kind != Tok::End) {
      const Token& kw = peek();
      if (kw.kind != Tok::Ident) fail({"declaration keyword"});
      if (kw.text == "field") {
        if (field_seen) throw Error(ErrorCode::DuplicateName, at(kw.pos) + "second field declaration", {kw.pos.line, kw.pos.column});
        field_seen = true;
        if (!out.declarations.empty()) syntax_error(kw.pos, "the field must be declared first");
        next();
        out.declarations.push_back(field_decl(kw.pos));
        continue;
      }
      std::optional<DeclKind> kind;
      for (DeclKind k : {DeclKind::Algebra, DeclKind::Morphism, DeclKind::Module, DeclKind::Map, DeclKind::Bimodule,
                         DeclKind::Element, DeclKind::Context}) {
        if (kw.text == to_string(k)) kind = k;
      }
      if (!kind) fail({"field", "algebra", "morphism", "module", "map", "bimodule", "element", "context"});
      next();
      out.declarations.push_back(decl(*kind, kw.pos));
    }
    return out;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  std::map<std::string, DeclKind> declared_;

  static std::string at(SourcePos p) { return "line " + std::to_string(p.line) + ", column " + std::to_string(p.column) + ": "; }

  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(at_ + ahead, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(at_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const std::vector<std::string>& expected) const {
    std::string list;
    for (std::size_t i = 0; i < expected.size(); ++i) list += (i ? ", " : "") + expected[i];
    syntax_error(peek().pos, "expected " + (expected.size() > 1 ? "one of " + list : list) + ", found " + describe(peek()));
  }

  bool is_punct(const std::string& p, std::size_t ahead = 0) const { return peek(ahead).kind == Tok::Punct && peek(ahead).text == p; }
  bool is_word(const std::string& w) const { return peek().kind == Tok::Ident && peek().text == w; }

  void punct(const std::string& p) {
    if (!is_punct(p)) fail({"'" + p + "'"});
    next();
  }
  void word(const std::string& w) {
    if (!is_word(w)) fail({"'" + w + "'"});
    next();
  }
  std::string ident() {
    if (peek().kind != Tok::Ident) fail({"identifier"});
    return next().text;
  }
  std::size_t integer() {
    if (peek().kind != Tok::Int) fail({"integer"});
    const Token& t = next();
    if (t.text.size() > 9) syntax_error(t.pos, "integer too large");
    return std::stoul(t.text);
  }
  /// A label: identifier, integer or string.
  std::string label() {
    if (peek().kind != Tok::Ident && peek().kind != Tok::Int && peek().kind != Tok::String) fail({"label"});
    return next().text;
  }
  mpq_class unsigned_number() {
    if (peek().kind != Tok::Int) fail({"number"});
    mpq_class q(next().text);
    if (is_punct("/")) {
      next();
      if (peek().kind != Tok::Int) fail({"denominator"});
      const Token& d = next();
      mpz_class den(d.text);
      if (den == 0) syntax_error(d.pos, "zero denominator");
      q /= mpq_class(den);
    }
    q.canonicalize();
    return q;
  }
  mpq_class number() {
    if (is_punct("-")) {
      next();
      return -unsigned_number();
    }
    return unsigned_number();
  }

  std::string reference(DeclKind expected_kind) {
    const Token& t = peek();
    const std::string name = ident();
    auto it = declared_.find(name);
    if (it == declared_.end()) {
      throw Error(ErrorCode::UnresolvedReference, at(t.pos) + "unknown name '" + name + "'", {t.pos.line, t.pos.column});
    }
    (void)expected_kind;
    return name;
  }

  Declaration field_decl(SourcePos pos) {
    Declaration d;
    d.kind = DeclKind::Field;
    d.pos = pos;
    const std::string f = ident();
    if (f == "Q") {
      d.name = "Q";
    } else if (f == "Fp") {
      punct(":");
      d.name = "Fp:" + std::to_string(integer());
    } else {
      syntax_error(pos, "expected Q or Fp:<p>");
    }
    return d;
  }

  Declaration decl(DeclKind kind, SourcePos pos) {
    Declaration d;
    d.kind = kind;
    d.pos = pos;
    const Token name_tok = peek();
    d.name = ident();
    if (declared_.count(d.name)) {
      throw Error(ErrorCode::DuplicateName, at(name_tok.pos) + "'" + d.name + "' is already declared",
                  {name_tok.pos.line, name_tok.pos.column});
    }
    punct("=");
    if (peek().kind != Tok::Ident) fail(operators(kind));
    const Token op_tok = peek();
    d.op = next().text;
    const auto ops = operators(kind);
    if (std::find(ops.begin(), ops.end(), d.op) == ops.end()) {
      --at_;
      fail(ops);
    }
    for (ArgKind a : signature(kind, d.op)) {
      switch (a) {
        case K::Name: d.args.emplace_back(NameArg{reference(kind)}); break;
        case K::Int: d.args.emplace_back(integer()); break;
        case K::Side:
          if (!is_word("left") && !is_word("right")) fail({"left", "right"});
          d.args.emplace_back(NameArg{next().text});
          break;
        case K::Vectors: d.args.emplace_back(vectors()); break;
        case K::Matrix: d.args.emplace_back(matrix()); break;
        case K::StructConst: d.args.emplace_back(structconst()); break;
        case K::Quiver: d.args.emplace_back(quiver()); break;
        case K::Actions: d.args.emplace_back(actions()); break;
        case K::Morita: d.args.emplace_back(morita()); break;
        case K::ArrowToken: punct("->"); break;
        case K::AlongToken: word("along"); break;
      }
    }
    (void)op_tok;
    declared_[d.name] = kind;
    return d;
  }

  LinComb lincomb() {
    if (is_word("zero")) {
      next();
      return {};
    }
    LinComb out;
    bool negative = false;
    if (is_punct("-")) {
      next();
      negative = true;
    }
    for (;;) {
      Term t;
      t.coefficient = 1;
      if (peek().kind == Tok::Int && (is_punct("*", 1) || is_punct("/", 1))) {
        t.coefficient = unsigned_number();
        punct("*");
      }
      t.ref = label();
      if (negative) t.coefficient = -t.coefficient;
      out.push_back(std::move(t));
      if (is_punct("+")) {
        negative = false;
      } else if (is_punct("-")) {
        negative = true;
      } else {
        break;
      }
      next();
    }
    return out;
  }

  std::vector<LinComb> vectors() {
    punct("[");
    std::vector<LinComb> out;
    if (is_punct("]")) {
      next();
      return out;
    }
    out.push_back(lincomb());
    while (is_punct(",")) {
      next();
      out.push_back(lincomb());
    }
    punct("]");
    return out;
  }

  MatrixLiteral matrix() {
    punct("[");
    MatrixLiteral out;
    if (is_punct("]")) {
      next();
      return out;
    }
    for (;;) {
      std::vector<mpq_class> row;
      while (peek().kind == Tok::Int || is_punct("-")) row.push_back(number());
      out.push_back(std::move(row));
      if (is_punct(";")) {
        next();
        continue;
      }
      if (!is_punct("]")) fail({"number", "';'", "']'"});
      next();
      return out;
    }
  }

  StructConstBody structconst() {
    StructConstBody b;
    punct("{");
    word("dim");
    b.dim = integer();
    punct(";");
    if (is_word("labels")) {
      next();
      while (!is_punct(";")) b.labels.push_back(label());
      punct(";");
    }
    while (!is_word("unit")) {
      StructConstBody::Product p;
      p.left = label();
      punct("*");
      p.right = label();
      punct("=");
      p.value = lincomb();
      punct(";");
      b.products.push_back(std::move(p));
    }
    word("unit");
    punct("=");
    b.unit = lincomb();
    if (is_punct(";")) next();
    punct("}");
    return b;
  }

  std::vector<QuiverBody::PathTermLiteral> relation() {
    std::vector<QuiverBody::PathTermLiteral> out;
    bool negative = false;
    if (is_punct("-")) {
      next();
      negative = true;
    }
    for (;;) {
      QuiverBody::PathTermLiteral t;
      t.coefficient = 1;
      if (peek().kind == Tok::Int) {
        t.coefficient = unsigned_number();
        punct("*");
      }
      t.factors.push_back(ident());
      while (is_punct("*")) {
        next();
        t.factors.push_back(ident());
      }
      if (negative) t.coefficient = -t.coefficient;
      out.push_back(std::move(t));
      if (is_punct("+")) {
        negative = false;
      } else if (is_punct("-")) {
        negative = true;
      } else {
        break;
      }
      next();
    }
    return out;
  }

  QuiverBody quiver() {
    QuiverBody q;
    punct("{");
    word("vertices");
    while (!is_punct(";")) q.vertices.push_back(label());
    punct(";");
    while (is_word("arrow")) {
      next();
      QuiverBody::Arrow a;
      a.name = ident();
      punct(":");
      a.source = label();
      punct("->");
      a.target = label();
      punct(";");
      q.arrows.push_back(std::move(a));
    }
    while (is_word("relation")) {
      next();
      q.relations.push_back(relation());
      punct(";");
    }
    if (is_word("bound")) {
      next();
      q.bound = integer();
      punct(";");
    }
    if (!is_punct("}")) fail({"arrow", "relation", "bound", "'}'"});
    next();
    return q;
  }

  ActionsBody actions() {
    ActionsBody b;
    punct("{");
    word("dim");
    b.dim = integer();
    punct(";");
    while (is_word("act") || is_word("left") || is_word("right")) {
      ActionsBody::Entry e;
      e.tag = next().text;
      e.index = integer();
      punct("=");
      e.matrix = matrix();
      punct(";");
      b.entries.push_back(std::move(e));
    }
    if (!is_punct("}")) fail({"act", "left", "right", "'}'"});
    next();
    return b;
  }

  MoritaBody morita() {
    MoritaBody m;
    punct("{");
    for (auto [key, slot] : {std::pair{"A", &m.a}, std::pair{"C", &m.c}, std::pair{"X", &m.x}, std::pair{"Y", &m.y}}) {
      word(key);
      punct("=");
      *slot = reference(DeclKind::Context);
      punct(";");
    }
    while (is_word("f") || is_word("g")) {
      MoritaBody::Pairing p;
      p.which = next().text[0];
      p.first = integer();
      p.second = integer();
      punct("=");
      p.value = lincomb();
      punct(";");
      m.pairings.push_back(std::move(p));
    }
    if (!is_punct("}")) fail({"f", "g", "'}'"});
    next();
    return m;
  }
};

// ---------------------------------------------------------------- printing

bool plain_ident(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), ident_char) && s != "zero";
}
bool digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string print_label(const std::string& s) {
  if (plain_ident(s) || digits(s)) return s;
  return "\"" + s + "\"";
}

std::string print_number(const mpq_class& q) { return q.get_str(); }

std::string print_lincomb(const LinComb& v) {
  if (v.empty()) return "zero";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    mpq_class c = v[i].coefficient;
    if (c < 0) {
      out += i ? " - " : "-";
      c = -c;
    } else if (i) {
      out += " + ";
    }
    if (c != 1) out += print_number(c) + "*";
    out += print_label(v[i].ref);
  }
  return out;
}

std::string print_vectors(const std::vector<LinComb>& vs) {
  std::string out = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + print_lincomb(vs[i]);
  return out + "]";
}

std::string print_matrix(const MatrixLiteral& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) out += "; ";
    for (std::size_t j = 0; j < m[i].size(); ++j) out += (j ? " " : "") + print_number(m[i][j]);
  }
  return out + "]";
}

std::string print_structconst(const StructConstBody& b) {
  std::string out = "{ dim " + std::to_string(b.dim) + ";";
  if (!b.labels.empty()) {
    out += " labels";
    for (const auto& l : b.labels) out += " " + print_label(l);
    out += ";";
  }
  for (const auto& p : b.products) {
    out += " " + print_label(p.left) + "*" + print_label(p.right) + " = " + print_lincomb(p.value) + ";";
  }
  return out + " unit = " + print_lincomb(b.unit) + "; }";
}

std::string print_quiver(const QuiverBody& q) {
  std::string out = "{ vertices";
  for (const auto& v : q.vertices) out += " " + print_label(v);
  out += ";";
  for (const auto& a : q.arrows) out += " arrow " + a.name + ": " + print_label(a.source) + " -> " + print_label(a.target) + ";";
  for (const auto& r : q.relations) {
    out += " relation ";
    for (std::size_t i = 0; i < r.size(); ++i) {
      mpq_class c = r[i].coefficient;
      if (c < 0) {
        out += i ? " - " : "-";
        c = -c;
      } else if (i) {
        out += " + ";
      }
      if (c != 1) out += print_number(c) + "*";
      for (std::size_t k = 0; k < r[i].factors.size(); ++k) out += (k ? "*" : "") + r[i].factors[k];
    }
    out += ";";
  }
  if (q.bound) out += " bound " + std::to_string(*q.bound) + ";";
  return out + " }";
}

std::string print_actions(const ActionsBody& b) {
  std::string out = "{ dim " + std::to_string(b.dim) + ";";
  for (const auto& e : b.entries) out += " " + e.tag + " " + std::to_string(e.index) + " = " + print_matrix(e.matrix) + ";";
  return out + " }";
}

std::string print_morita(const MoritaBody& m) {
  std::string out = "{ A = " + m.a + "; C = " + m.c + "; X = " + m.x + "; Y = " + m.y + ";";
  for (const auto& p : m.pairings) {
    out += std::string(" ") + p.which + " " + std::to_string(p.first) + " " + std::to_string(p.second) + " = " + print_lincomb(p.value) + ";";
  }
  return out + " }";
}

}  // namespace

const std::vector<ArgKind>& signature(DeclKind kind, const std::string& op) {
  auto it = table().find(kind);
  if (it != table().end()) {
    for (const auto& [name, sig] : it->second) {
      if (name == op) return sig;
    }
  }
  throw Error(ErrorCode::UnresolvedReference, "no operator '" + op + "' for " + std::string(to_string(kind)));
}

std::vector<std::string> operators(DeclKind kind) {
  std::vector<std::string> out;
  auto it = table().find(kind);
  if (it != table().end()) {
    for (const auto& entry : it->second) out.push_back(entry.first);
  }
  return out;
}

PresentationFile parse_presentation(std::string_view text) { return Parser(lex(text)).file(); }

std::string print_declaration(const Declaration& d) {
  if (d.kind == DeclKind::Field) {
    if (d.name == "Q") return "field Q";
    return "field Fp:" + d.name.substr(3);
  }
  std::string out = std::string(to_string(d.kind)) + " " + d.name + " = " + d.op;
  std::size_t next_arg = 0;
  for (ArgKind a : signature(d.kind, d.op)) {
    if (a == K::ArrowToken) {
      out += " ->";
      continue;
    }
    if (a == K::AlongToken) {
      out += " along";
      continue;
    }
    const Arg& arg = d.args.at(next_arg++);
    out += " ";
    std::visit(
        [&](const auto& v) {
          using V = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<V, NameArg>) out += v.name;
          else if constexpr (std::is_same_v<V, std::size_t>) out += std::to_string(v);
          else if constexpr (std::is_same_v<V, std::vector<LinComb>>) out += print_vectors(v);
          else if constexpr (std::is_same_v<V, MatrixLiteral>) out += print_matrix(v);
          else if constexpr (std::is_same_v<V, StructConstBody>) out += print_structconst(v);
          else if constexpr (std::is_same_v<V, QuiverBody>) out += print_quiver(v);
          else if constexpr (std::is_same_v<V, ActionsBody>) out += print_actions(v);
          else out += print_morita(v);
        },
        arg);
  }
  return out;
}

std::string print_presentation(const PresentationFile& file) {
  std::string out;
  for (const auto& d : file.declarations) out += print_declaration(d) + "\n";
  return out;
}

Declaration structconst_declaration(const std::string& name, const Algebra& a) {
  // Labels double as references when they are unique; otherwise indices.
  const std::set<std::string> distinct(a.labels().begin(), a.labels().end());
  const bool by_label = distinct.size() == a.dim();
  auto ref = [&](std::size_t i) { return by_label ? a.label(i) : std::to_string(i); };
  auto lincomb_of = [&](const Vector& v) {
    LinComb out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_zero()) out.push_back({v[i].to_mpq(), ref(i)});
    }
    return out;
  };
  StructConstBody b;
  b.dim = a.dim();
  if (by_label) b.labels = a.labels();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const SparseVector& p = a.product(i, j);
      if (p.empty()) continue;
      b.products.push_back({ref(i), ref(j), lincomb_of(to_dense(a.field(), p, a.dim()))});
    }
  }
  b.unit = lincomb_of(a.unit());
  Declaration d;
  d.kind = DeclKind::Algebra;
  d.name = name;
  d.op = "structconst";
  d.args.emplace_back(std::move(b));
  return d;
}

}  // namespace excon
