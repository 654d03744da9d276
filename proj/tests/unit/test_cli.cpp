#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "excon/elaborate.hpp"
#include "excon/presentation.hpp"

using excon::cli::Json;
using excon::cli::Report;
using excon::cli::run;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

/// Runs the tool from the source root, so reports carry relative paths.
Outcome invoke(const std::vector<std::string>& args) {
  const auto cwd = std::filesystem::current_path();
  std::filesystem::current_path(EXCON_SOURCE_DIR);
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  std::filesystem::current_path(cwd);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Golden {
  const char* name;
  std::vector<std::string> args;
  int code;
};

const std::vector<Golden>& goldens() {
  static const std::vector<Golden> g = {
      {"check.trivial_k", {"check", "corpus/trivial.exc", "trivial_k", "--json"}, 0},
      {"check.morita_zero", {"check", "corpus/morita_zero.exc", "morita_zero", "--json"}, 0},
      {"nct.trivial_D", {"nct", "corpus/trivial.exc", "trivial_D", "--json"}, 0},
      {"nct.morita_matrix", {"nct", "corpus/morita_matrix.exc", "morita_matrix", "--oracle", "morita", "--json"}, 0},
      {"nct.morita_zero", {"nct", "corpus/morita_zero.exc", "morita_zero", "--oracle", "morita", "--json"}, 0},
      {"nct.pure_loops", {"nct", "corpus/pure.exc", "pure_loops", "--oracle", "pure", "--json"}, 0},
      {"tor.tri_subring", {"tor", "corpus/tri_subring.exc", "S_R", "R_S", "--max-degree", "3", "--json"}, 0},
      {"tor.tri_subring.f101", {"tor", "corpus/tri_subring.exc", "S_R", "R_S", "--max-degree", "3", "--field", "Fp:101", "--json"}, 0},
      {"theorem1.morita_zero", {"theorem1", "corpus/morita_zero.exc", "morita_zero", "--max-degree", "6", "--json"}, 0},
      {"theorem1.pure_loops", {"theorem1", "corpus/pure.exc", "pure_loops", "--max-degree", "6", "--json"}, 0},
      {"theorem1.tri_subring", {"theorem1", "corpus/tri_subring.exc", "tri_subring", "--max-degree", "2", "--json"}, 0},
      {"pd.S_R", {"pd", "corpus/tri_subring.exc", "S_R", "--json"}, 0},
      {"pd.morita_zero", {"pd", "corpus/morita_zero.exc", "morita_zero", "--json"}, 0},
      {"rigid.pi", {"rigid", "corpus/rigid.exc", "pi", "--json"}, 0},
      {"rigid.times_x", {"rigid", "corpus/rigid.exc", "times_x", "--json"}, 0},
  };
  return g;
}

const Json* verdict(const Json& report, const std::string& name) {
  for (const auto& v : report.at("verdicts")) {
    if (v.at("name") == name) return &v;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("reports match the golden files") {
  // EXCON_UPDATE_GOLDEN=1 rewrites the files instead of comparing.
  const bool update = std::getenv("EXCON_UPDATE_GOLDEN") != nullptr;
  for (const auto& g : goldens()) {
    CAPTURE(g.name);
    const Outcome o = invoke(g.args);
    CHECK(o.code == g.code);
    CHECK(o.err.empty());
    const auto path = std::filesystem::path(EXCON_SOURCE_DIR) / "corpus" / "golden" / (std::string(g.name) + ".json");
    if (update) {
      std::ofstream(path) << o.out;
      continue;
    }
    REQUIRE(std::filesystem::exists(path));
    CHECK(o.out == slurp(path));
  }
}

TEST_CASE("golden reports carry the expected answers") {
  auto load = [](const char* name) {
    return Json::parse(slurp(std::filesystem::path(EXCON_SOURCE_DIR) / "corpus" / "golden" / (std::string(name) + ".json")));
  };
  const Json nct = load("nct.morita_zero");
  CHECK(nct.at("data").at("dim") == 5);
  CHECK(verdict(nct, "oracle")->at("detail").at("summary") == "structure constants identical");
  CHECK(load("nct.trivial_D").at("data").at("dim") == 2);
  for (const char* name : {"tor.tri_subring", "tor.tri_subring.f101"}) {
    const Json tor = load(name);
    CHECK(tor.at("data").at("tor_dims").at(1) == 0);
    CHECK(tor.at("data").at("tor_dims").at(2).get<int>() >= 1);
  }
  const Json loops = load("theorem1.pure_loops");
  CHECK(verdict(loops, "criterion")->at("status") == "fail");
  CHECK(verdict(loops, "criterion")->at("detail").at("failing_degree") == 1);
  CHECK(verdict(load("theorem1.tri_subring"), "lambda_homological")->at("status") == "fail");
  CHECK(verdict(load("rigid.pi"), "rigid")->at("status") == "pass");
  CHECK(verdict(load("rigid.times_x"), "rigid")->at("status") == "fail");
}

TEST_CASE("reports round-trip through JSON") {
  for (const auto& g : goldens()) {
    CAPTURE(g.name);
    const Json j = Json::parse(invoke(g.args).out);
    const Report r = Report::from_json(j);
    CHECK(r.to_json(false, std::nullopt) == j);
  }
}

TEST_CASE("exit codes") {
  SUBCASE("malformed file is an input error with a position") {
    const auto path = std::filesystem::temp_directory_path() / "excon_malformed.exc";
    std::ofstream(path) << "algebra A = structconst { dim 1;";
    const Outcome o = invoke({"check", path.string(), "A"});
    CHECK(o.code == 2);
    const Json e = Json::parse(o.err);
    CHECK(e.at("schema") == excon::cli::kErrorSchema);
    CHECK(e.at("error").at("code") == "SyntaxError");
    CHECK(e.at("error").at("witness") == Json::array({1, 33}));
  }
  SUBCASE("missing context name") {
    const Outcome o = invoke({"theorem1", "corpus/pure.exc", "missing"});
    CHECK(o.code == 2);
    CHECK(Json::parse(o.err).at("error").at("code") == "UnresolvedReference");
  }
  SUBCASE("oracle on the wrong family") {
    const Outcome o = invoke({"nct", "corpus/pure.exc", "pure_loops", "--oracle", "morita"});
    CHECK(o.code == 2);
    CHECK(Json::parse(o.err).at("error").at("code") == "OracleMismatch");
  }
  SUBCASE("usage errors") {
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({"check", "corpus/trivial.exc"}).code == 2);
    CHECK(invoke({"tor", "corpus/tri_subring.exc", "S_R"}).code == 2);
    CHECK(invoke({"check", "corpus/trivial.exc", "trivial_k", "--field", "Fp:12"}).code == 2);
    CHECK(invoke({"--help"}).code == 0);
  }
  SUBCASE("a negative answer to a query is not a failure unless asserted") {
    CHECK(invoke({"theorem1", "corpus/pure.exc", "pure_loops", "--max-degree", "3"}).code == 0);
    CHECK(invoke({"theorem1", "corpus/pure.exc", "pure_loops", "--max-degree", "3", "--expect", "pass"}).code == 1);
    CHECK(invoke({"theorem1", "corpus/pure.exc", "pure_loops", "--max-degree", "3", "--expect", "fail"}).code == 0);
    CHECK(invoke({"rigid", "corpus/rigid.exc", "times_x", "--expect", "pass"}).code == 1);
  }
  SUBCASE("a context that fails its defining check") {
    const auto path = std::filesystem::temp_directory_path() / "excon_not_exact.exc";
    // Dimensions 1, 4, 2 cannot form a short exact sequence.
    std::ofstream(path) << "algebra k = ground\n"
                           "algebra P = product k k\n"
                           "morphism d = linear k -> P [1 1]\n"
                           "bimodule M = regular P\n"
                           "element m = unit P\n"
                           "context c = exact d d M m\n";
    const Outcome o = invoke({"check", path.string(), "c", "--json"});
    CHECK(o.code == 1);
    const Json j = Json::parse(o.out);
    CHECK(verdict(j, "exactness")->at("status") == "fail");
    CHECK(verdict(j, "exactness")->at("detail").at("code") == "NotExact");
  }
  SUBCASE("dimension cap from the environment") {
    ::setenv("EXCON_MAX_DIM", "10", 1);
    const Outcome o = invoke({"tor", "corpus/tri_subring.exc", "S_R", "R_S"});
    ::unsetenv("EXCON_MAX_DIM");
    CHECK(o.code == 2);
    CHECK(Json::parse(o.err).at("error").at("code") == "DimensionCap");
  }
}

TEST_CASE("emitted algebra parses back to the same ring") {
  const auto path = std::filesystem::temp_directory_path() / "excon_emit.exc";
  CHECK(invoke({"nct", "corpus/morita_zero.exc", "morita_zero", "--emit-algebra", path.string()}).code == 0);
  const Outcome o = invoke({"check", path.string(), "NCT"});
  // NCT is an algebra, not a context.
  CHECK(o.code == 2);
  CHECK(Json::parse(o.err).at("error").at("code") == "TypeMismatch");
  CHECK(slurp(path).rfind("field Q\nalgebra NCT = structconst", 0) == 0);
  const excon::Environment env = excon::elaborate(excon::parse_presentation(slurp(path)));
  CHECK(env.algebra("NCT").algebra->dim() == 5);
}

TEST_CASE("reports do not depend on the thread count") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"theorem1", "corpus/pure.exc", "pure_plane", "--max-degree", "6", "--json"},
           {"theorem1", "corpus/morita_zero.exc", "morita_zero", "--max-degree", "6", "--json"},
           {"pd", "corpus/tri_subring.exc", "S_R", "--json"}}) {
    std::vector<std::string> threaded = args;
    threaded.insert(threaded.end(), {"--threads", "4"});
    const std::string once = invoke(args).out;
    CHECK(invoke(args).out == once);
    CHECK(invoke(threaded).out == once);
  }
}
