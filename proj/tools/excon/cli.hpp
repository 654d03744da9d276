#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "excon/field.hpp"

namespace excon::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "excon-report/1";
inline constexpr const char* kErrorSchema = "excon-error/1";

enum class Status { Pass, Fail, Inconclusive };
std::string to_string(Status s);

/// A check must pass for exit code 0; a query only reports an answer.
struct Verdict {
  std::string name;
  Status status = Status::Pass;
  bool check = true;
  Json detail = Json::object();
};

struct Report {
  std::string command;
  Json inputs = Json::object();
  std::vector<Verdict> verdicts;
  Json data = Json::object();
  std::vector<std::pair<std::string, double>> timings;  // milliseconds
  std::string primary;  // verdict compared against --expect

  const Verdict* find(const std::string& name) const;
  /// 1 when a check failed or the primary verdict differs from `expect`.
  int exit_code(const std::optional<std::string>& expect) const;
  Json to_json(bool with_timings, const std::optional<std::string>& expect) const;
  std::string to_text(bool with_timings, const std::optional<std::string>& expect) const;
  /// Inverse of to_json on the fields above; timings come back only when
  /// they were serialized.
  static Report from_json(const Json& j);
};

struct Options {
  std::string command;
  std::string file;
  std::vector<std::string> names;
  std::size_t max_degree = 8;
  std::string oracle = "none";
  std::string emit_path;
  std::optional<std::string> expect;
  std::optional<Field> field;
  std::size_t threads = 1;
  bool json = false;
  bool timings = false;
  std::size_t max_dim = 256;
};

Report cmd_check(const Options& o);
Report cmd_nct(const Options& o);
Report cmd_tor(const Options& o);
Report cmd_theorem1(const Options& o);
Report cmd_pd(const Options& o);
Report cmd_rigid(const Options& o);
Report dispatch(const Options& o);

/// Full command line: parses `args` (without the program name), runs the
/// command and writes the report to `out` and errors to `err`. Returns the
/// exit code: 0 pass, 1 verification failure, 2 input or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace excon::cli
