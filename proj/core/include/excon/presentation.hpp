#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "excon/algebra.hpp"

namespace excon {

/// Text presentations of algebras, modules, maps and exact contexts.
///
///   file    := decl*
///   decl    := 'field' ('Q' | 'Fp' ':' INT)
///            | kind NAME '=' OP arg*          kind in algebra morphism module
///                                              map bimodule element context
///   lincomb := 'zero' | ['-'] term (('+' | '-') term)*
///   term    := [NUMBER '*'] ref               ref := INT | IDENT | STRING
///   vectors := '[' lincomb (',' lincomb)* ']'
///   matrix  := '[' row (';' row)* ']'         row := NUMBER*
///
/// The operators and their argument lists are listed in `signature`. A path
/// "a*b" in a quiver relation means first a, then b. Names must be declared
/// before use; `#` starts a comment.

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  bool operator==(const SourcePos&) const = default;
};

struct Term {
  mpq_class coefficient;
  std::string ref;  // basis index, label, or quoted label
  bool operator==(const Term& o) const { return coefficient == o.coefficient && ref == o.ref; }
};
using LinComb = std::vector<Term>;  // empty is zero
using MatrixLiteral = std::vector<std::vector<mpq_class>>;

struct StructConstBody {
  struct Product {
    std::string left;
    std::string right;
    LinComb value;
    bool operator==(const Product&) const = default;
  };
  std::size_t dim = 0;
  std::vector<std::string> labels;  // empty: "0", "1", ...
  std::vector<Product> products;    // missing products are zero
  LinComb unit;
  bool operator==(const StructConstBody&) const = default;
};

struct QuiverBody {
  struct Arrow {
    std::string name;
    std::string source;
    std::string target;
    bool operator==(const Arrow&) const = default;
  };
  struct PathTermLiteral {
    mpq_class coefficient;
    std::vector<std::string> factors;
    bool operator==(const PathTermLiteral& o) const { return coefficient == o.coefficient && factors == o.factors; }
  };
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::vector<PathTermLiteral>> relations;
  std::optional<std::size_t> bound;
  bool operator==(const QuiverBody&) const = default;
};

/// `{ dim N; act i = M; ... }` for modules, `left i` / `right j` for bimodules.
struct ActionsBody {
  struct Entry {
    std::string tag;  // "act", "left" or "right"
    std::size_t index = 0;
    MatrixLiteral matrix;
    bool operator==(const Entry&) const = default;
  };
  std::size_t dim = 0;
  std::vector<Entry> entries;
  bool operator==(const ActionsBody&) const = default;
};

/// `{ A = a; C = c; X = x; Y = y; f i j = ...; g j i = ...; }`, f pairing
/// x_i y_j into A and g pairing y_j x_i into C; missing pairings are zero.
struct MoritaBody {
  struct Pairing {
    char which = 'f';
    std::size_t first = 0;
    std::size_t second = 0;
    LinComb value;
    bool operator==(const Pairing&) const = default;
  };
  std::string a, c, x, y;
  std::vector<Pairing> pairings;
  bool operator==(const MoritaBody&) const = default;
};

struct NameArg {
  std::string name;
  bool operator==(const NameArg&) const = default;
};
using Arg = std::variant<NameArg, std::size_t, std::vector<LinComb>, MatrixLiteral, StructConstBody, QuiverBody,
                         ActionsBody, MoritaBody>;

enum class DeclKind { Field, Algebra, Morphism, Module, Map, Bimodule, Element, Context };
std::string_view to_string(DeclKind k);

struct Declaration {
  DeclKind kind = DeclKind::Algebra;
  std::string name;  // for Field: "Q" or "Fp:<p>"
  std::string op;
  std::vector<Arg> args;
  SourcePos pos;
  bool operator==(const Declaration& o) const {
    return kind == o.kind && name == o.name && op == o.op && args == o.args;
  }
};

struct PresentationFile {
  std::vector<Declaration> declarations;
  const Declaration* find(const std::string& name) const;
  bool operator==(const PresentationFile&) const = default;
};

/// Argument shapes of an operator.
enum class ArgKind { Name, Int, Side, Vectors, Matrix, StructConst, Quiver, Actions, Morita, ArrowToken, AlongToken };
/// Throws UnresolvedReference for an unknown (kind, op) pair.
const std::vector<ArgKind>& signature(DeclKind kind, const std::string& op);
/// Every operator accepted for `kind`, in documentation order.
std::vector<std::string> operators(DeclKind kind);

/// Throws SyntaxError (witness: line, column), DuplicateName or
/// UnresolvedReference (witness: line, column).
PresentationFile parse_presentation(std::string_view text);

/// Canonical text; parse_presentation(print_presentation(f)) == f.
std::string print_presentation(const PresentationFile& file);
std::string print_declaration(const Declaration& decl);

/// `algebra <name> = structconst { ... }` with exact coefficients and
/// quoted labels.
Declaration structconst_declaration(const std::string& name, const Algebra& a);

}  // namespace excon
