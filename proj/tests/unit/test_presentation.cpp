#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "excon/elaborate.hpp"
#include "excon/error.hpp"
#include "excon/presentation.hpp"

using namespace excon;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(EXCON_CORPUS_DIR)) {
    if (e.path().extension() == ".exc") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

Error error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  return Error(ErrorCode::InvalidArgument, "no error");
}

}  // namespace

TEST_CASE("parse examples") {
  SUBCASE("one-dimensional structure constants") {
    PresentationFile f = parse_presentation("field Q  algebra A = structconst { dim 1; 0*0 = 0; unit = 0 }");
    REQUIRE(f.declarations.size() == 2);
    CHECK(f.declarations[1].kind == DeclKind::Algebra);
    CHECK(f.declarations[1].op == "structconst");
    Environment env = elaborate(f);
    CHECK(env.algebra("A").algebra->dim() == 1);
  }
  SUBCASE("two-cycle quiver with both zero relations") {
    PresentationFile f = parse_presentation(
        "algebra Q0 = quiver { vertices 1 2; arrow a: 1 -> 2; arrow b: 2 -> 1; relation a*b; relation b*a; }");
    const auto& q = std::get<QuiverBody>(f.declarations[0].args[0]);
    CHECK(q.vertices.size() == 2);
    CHECK(q.arrows.size() == 2);
    CHECK(q.relations.size() == 2);
    CHECK(elaborate(f).algebra("Q0").algebra->dim() == 4);
  }
  SUBCASE("unterminated body") {
    Error e = error_of([] { parse_presentation("algebra A = structconst { dim 1;"); });
    CHECK(e.code() == ErrorCode::SyntaxError);
    CHECK(e.witness() == std::vector<std::size_t>{1, 33});
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
  }
}

TEST_CASE("parse errors") {
  CHECK(error_of([] { parse_presentation("algebra A = ground algebra A = ground"); }).code() == ErrorCode::DuplicateName);
  Error unresolved = error_of([] { parse_presentation("algebra M = matrixalg B 2"); });
  CHECK(unresolved.code() == ErrorCode::UnresolvedReference);
  CHECK(unresolved.witness() == std::vector<std::size_t>{1, 23});
  CHECK(error_of([] { parse_presentation("algebra A = banana"); }).code() == ErrorCode::SyntaxError);
  CHECK(error_of([] { parse_presentation("algebra A = ground\n  morphism f = linear A -> A [1 0"); }).witness() ==
        std::vector<std::size_t>{2, 34});
  CHECK(error_of([] { parse_presentation("algebra A = structconst { dim 1; 0*0 = 1/0*0; unit = 0; }"); }).code() ==
        ErrorCode::SyntaxError);
}

TEST_CASE("elaboration errors") {
  CHECK(error_of([] { elaborate(parse_presentation("algebra A = ground morphism f = inclusion A")); }).code() == ErrorCode::TypeMismatch);
  CHECK(error_of([] { elaborate(parse_presentation("algebra A = ground algebra M = matrixalg A 20"), std::nullopt, 256); }).code() ==
        ErrorCode::DimensionCap);
  CHECK(error_of([] { elaborate(parse_presentation("algebra A = structconst { dim 2; 0*0 = 0; unit = 0; }")); }).code() ==
        ErrorCode::BadUnit);
  CHECK(error_of([] { elaborate(parse_presentation("algebra A = structconst { dim 1; 0*0 = 3; unit = 0; }")); }).code() ==
        ErrorCode::DimensionMismatch);
  CHECK(error_of([] { elaborate(parse_presentation("algebra A = structconst { dim 1; 0*0 = y; unit = 0; }")); }).code() ==
        ErrorCode::UnresolvedReference);
  // Morphism laws are checked.
  CHECK(error_of([] { elaborate(parse_presentation("algebra A = ground morphism f = linear A -> A [2]")); }).code() ==
        ErrorCode::NotAMorphism);
}

TEST_CASE("quiver elaboration") {
  CHECK(elaborate(parse_presentation("algebra P = quiver { vertices 1; }")).algebra("P").algebra->dim() == 1);
  const char* one_relation = "algebra P = quiver { vertices 1 2; arrow a: 1 -> 2; arrow b: 2 -> 1; relation a*b; }";
  const AlgebraPtr a = elaborate(parse_presentation(one_relation)).algebra("P").algebra;
  CHECK(a->labels() == std::vector<std::string>{"e1", "e2", "a", "b", "b.a"});
  // Acyclic, no relations: one basis element per path.
  const char* a3 = "algebra P = quiver { vertices 1 2 3; arrow a: 1 -> 2; arrow b: 2 -> 3; arrow c: 1 -> 3; }";
  CHECK(elaborate(parse_presentation(a3)).algebra("P").algebra->dim() == 3 + 3 + 1);
  CHECK(error_of([] { elaborate(parse_presentation("algebra P = quiver { vertices 1; arrow x: 1 -> 1; bound 5; }")); }).code() ==
        ErrorCode::NotFiniteDimensional);
}

TEST_CASE("rationals and prime fields") {
  const char* text = "algebra A = structconst { dim 2; labels 1 e; 1*1 = 1; 1*e = e; e*1 = e; e*e = 1/2*1 + e; unit = 1; }";
  Environment q = elaborate(parse_presentation(text));
  CHECK(q.field == Field::rationals());
  Environment p = elaborate(parse_presentation(std::string("field Fp:7 ") + text));
  CHECK(p.field == Field::prime(7));
  // 1/2 = 4 mod 7
  CHECK(p.algebra("A").algebra->multiply(p.algebra("A").algebra->basis_vector(1), p.algebra("A").algebra->basis_vector(1))[0] ==
        Field::prime(7).from_int(4));
  Environment over = elaborate(parse_presentation(text), Field::prime(101));
  CHECK(over.field == Field::prime(101));
  CHECK(error_of([&] { elaborate(parse_presentation("algebra A = structconst { dim 1; 0*0 = 1/7*0; unit = 0; }"), Field::prime(7)); })
            .code() == ErrorCode::DivisionByZero);
}

TEST_CASE("print then parse is the identity on the corpus") {
  const auto files = corpus_files();
  REQUIRE(files.size() >= 8);
  for (const auto& p : files) {
    CAPTURE(p.string());
    PresentationFile f = parse_presentation(slurp(p));
    const std::string printed = print_presentation(f);
    PresentationFile g = parse_presentation(printed);
    CHECK(g == f);
    CHECK(print_presentation(g) == printed);
  }
}

TEST_CASE("every corpus file elaborates") {
  std::size_t contexts = 0;
  for (const auto& p : corpus_files()) {
    CAPTURE(p.string());
    Environment env = elaborate(parse_presentation(slurp(p)));
    for (const auto& n : env.names()) {
      if (env.kind_of(n) == DeclKind::Context) ++contexts;
    }
  }
  CHECK(contexts >= 14);
}

TEST_CASE("emitted structure constants reproduce the algebra") {
  Environment env = elaborate(parse_presentation(slurp(std::filesystem::path(EXCON_CORPUS_DIR) / "tri_subring.exc")));
  for (const std::string name : {"S", "R", "D"}) {
    const AlgebraPtr& a = env.algebra(name).algebra;
    PresentationFile f;
    f.declarations.push_back(structconst_declaration("B", *a));
    PresentationFile back = parse_presentation(print_presentation(f));
    CHECK(back == f);
    CHECK(same_structure(*elaborate(back).algebra("B").algebra, *a));
  }
}
