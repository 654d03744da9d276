#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "excon/elaborate.hpp"
#include "excon/error.hpp"
#include "excon/homological.hpp"
#include "excon/linalg.hpp"
#include "excon/nc_tensor.hpp"
#include "excon/presentation.hpp"

#ifndef EXCON_VERSION
#define EXCON_VERSION "0.0.0"
#endif

namespace excon::cli {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

Status status_from(const std::string& s) {
  if (s == "pass") return Status::Pass;
  if (s == "fail") return Status::Fail;
  if (s == "inconclusive") return Status::Inconclusive;
  throw Error(ErrorCode::InvalidArgument, "unknown status '" + s + "'");
}

}  // namespace

const Verdict* Report::find(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

int Report::exit_code(const std::optional<std::string>& expect) const {
  for (const auto& v : verdicts) {
    if (v.check && v.status == Status::Fail) return 1;
  }
  if (expect) {
    const Verdict* p = find(primary);
    if (p == nullptr || to_string(p->status) != *expect) return 1;
  }
  return 0;
}

Json Report::to_json(bool with_timings, const std::optional<std::string>& expect) const {
  Json j;
  j["schema"] = kReportSchema;
  j["tool"] = {{"name", "excon"}, {"version", EXCON_VERSION}};
  j["command"] = command;
  j["inputs"] = inputs;
  Json vs = Json::array();
  for (const auto& v : verdicts) {
    vs.push_back({{"name", v.name}, {"kind", v.check ? "check" : "query"}, {"status", to_string(v.status)}, {"detail", v.detail}});
  }
  j["verdicts"] = vs;
  j["primary"] = primary;
  if (expect) j["expect"] = *expect;
  j["data"] = data;
  j["exit_code"] = exit_code(expect);
  if (with_timings) {
    Json t = Json::object();
    for (const auto& [k, ms] : timings) t[k] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

Report Report::from_json(const Json& j) {
  if (j.at("schema").get<std::string>() != kReportSchema) {
    throw Error(ErrorCode::InvalidArgument, "unsupported report schema '" + j.at("schema").get<std::string>() + "'");
  }
  Report r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  for (const auto& v : j.at("verdicts")) {
    r.verdicts.push_back(Verdict{v.at("name").get<std::string>(), status_from(v.at("status").get<std::string>()),
                                 v.at("kind").get<std::string>() == "check", v.at("detail")});
  }
  r.primary = j.at("primary").get<std::string>();
  r.data = j.at("data");
  if (j.contains("timings_ms")) {
    for (const auto& [k, ms] : j.at("timings_ms").items()) r.timings.emplace_back(k, ms.get<double>());
  }
  return r;
}

std::string Report::to_text(bool with_timings, const std::optional<std::string>& expect) const {
  std::ostringstream os;
  os << "excon " << command << "\n";
  for (const auto& [k, v] : inputs.items()) os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (const auto& v : verdicts) {
    os << "  [" << to_string(v.status) << "] " << v.name << (v.check ? "" : " (query)");
    if (v.detail.contains("summary")) os << ": " << v.detail["summary"].get<std::string>();
    os << "\n";
  }
  for (const auto& [k, v] : data.items()) os << "  " << k << " = " << v.dump() << "\n";
  if (with_timings) {
    for (const auto& [k, ms] : timings) os << "  time " << k << ": " << ms << " ms\n";
  }
  os << "exit " << exit_code(expect) << "\n";
  return os.str();
}

namespace {

Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s.to_string());
  return a;
}

Json matrix_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
  return a;
}

Json sizes_json(const std::vector<std::size_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

Json error_json(const Error& e) {
  return {{"code", std::string(to_string(e.code()))}, {"message", e.what()}, {"witness", sizes_json(e.witness())}};
}

Json pd_json(const ProjectiveDimension& pd) {
  if (pd.zero_module) return "zero";
  return pd.to_string();
}

Verdict verdict(std::string name, bool ok, Json detail, bool check = true) {
  return Verdict{std::move(name), ok ? Status::Pass : Status::Fail, check, std::move(detail)};
}

std::string plural_dims(const std::vector<std::size_t>& dims) {
  std::string s = "[";
  for (std::size_t i = 0; i < dims.size(); ++i) s += (i ? ", " : "") + std::to_string(dims[i]);
  return s + "]";
}

class Stopwatch {
 public:
  explicit Stopwatch(Report& r) : report_(r) {}
  void lap(const std::string& what) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings.emplace_back(what, std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  Report& report_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

/// Runs `fn` on its own thread when more than one thread is allowed;
/// otherwise evaluation happens at get(), in the order the caller asks.
template <class Fn>
auto launch(const Options& o, Fn fn) {
  return std::async(o.threads > 1 ? std::launch::async : std::launch::deferred, std::move(fn));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Environment load(const Options& o, Report& r) {
  Environment env = elaborate(parse_presentation(read_file(o.file)), o.field, o.max_dim, true);
  r.inputs["file"] = o.file;
  r.inputs["field"] = env.field.to_string();
  return env;
}

void require_names(const Options& o, std::size_t n) {
  if (o.names.size() != n) {
    throw Error(ErrorCode::InvalidArgument,
                "'" + o.command + "' takes " + std::to_string(n) + " name argument(s), got " + std::to_string(o.names.size()));
  }
}

void cap(const Options& o, const std::string& what, std::size_t dim) {
  if (dim > o.max_dim) {
    throw Error(ErrorCode::DimensionCap,
                what + " has dimension " + std::to_string(dim) + ", above the cap " + std::to_string(o.max_dim), {dim, o.max_dim});
  }
}

/// The named context, or nullptr after recording why its construction failed.
const ContextEntry* context_or_failure(const Environment& env, const std::string& name, Report& r) {
  r.inputs["context"] = name;
  if (env.kind_of(name) != DeclKind::Context) throw Error(ErrorCode::TypeMismatch, "'" + name + "' is not a context");
  if (const Error* e = env.failure(name)) {
    Json d = error_json(*e);
    d["summary"] = e->what();
    const std::string what = e->code() == ErrorCode::NotExact ? "exactness" : "context";
    r.verdicts.push_back(Verdict{what, Status::Fail, true, d});
    r.primary = what;
    return nullptr;
  }
  const ContextEntry& c = env.context(name);
  const ExactnessCertificate& cert = c.context.certificate;
  r.inputs["family"] = c.family;
  r.inputs["dims"] = {{"R", cert.dim_r}, {"S", cert.dim_s}, {"T", cert.dim_t}, {"M", cert.dim_m}};
  return &c;
}

bool hypergenerated(const ExactContext& ctx) {
  std::vector<Vector> span;
  for (std::size_t i = 0; i < ctx.s_times_m.rows(); ++i) span.push_back(ctx.s_times_m.row(i));
  for (std::size_t j = 0; j < ctx.m_times_t.rows(); ++j) span.push_back(ctx.m_times_t.row(j));
  return Subspace(ctx.field(), ctx.bimodule.dim(), span).dim() == ctx.bimodule.dim();
}

/// The ring, capped; a failed axiom becomes a fail verdict and nullopt.
std::optional<NcTensorRing> ring_or_failure(const Options& o, const ExactContext& ctx, Report& r) {
  cap(o, "T (x)_k S", ctx.t()->dim() * ctx.s()->dim());
  try {
    NcTensorRing ring = build_nc_tensor(ctx);
    r.verdicts.push_back(verdict("ring_axioms", true,
                                 {{"dim", ring.dim()},
                                  {"summary", "associative and unital; rho, phi morphisms; beta a bimodule map with beta(m) = 1"}}));
    r.data["dim"] = ring.dim();
    return ring;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InternalInconsistency) throw;
    Json d = error_json(e);
    d["summary"] = e.what();
    r.verdicts.push_back(Verdict{"ring_axioms", Status::Fail, true, d});
    return std::nullopt;
  }
}

Module module_operand(const Environment& env, const std::string& name, Side side) {
  switch (env.kind_of(name)) {
    case DeclKind::Module: {
      const Module& m = env.module(name).module;
      if (m.side() != side) {
        throw Error(ErrorCode::TypeMismatch, "'" + name + "' is a " + to_string(m.side()) + " module, expected " + to_string(side));
      }
      return m;
    }
    case DeclKind::Bimodule: {
      const Bimodule& b = env.bimodule(name);
      return side == Side::Left ? b.as_left() : b.as_right();
    }
    case DeclKind::Algebra: return Module::regular(env.algebra(name).algebra, side);
    default: throw Error(ErrorCode::TypeMismatch, "'" + name + "' is not a module, bimodule or algebra");
  }
}

Json collapse_verdicts(const BlockOracle& oracle, const AlgebraPtr& base, const std::string& family, Report& r) {
  const CollapseReport c = verify_collapse(oracle, base);
  r.verdicts.push_back(verdict("collapse", c.morphism && c.section,
                               {{"morphism", c.morphism},
                                {"section", c.section},
                                {"summary", std::string(c.morphism ? "surjective ring morphism" : "not a ring morphism") +
                                                (c.section ? ", beta then collapse is the identity" : ", no section")}}));
  if (family == "morita") {
    r.verdicts.push_back(verdict("beta_multiplicative_iff_w_zero", c.beta_multiplicative == c.w_zero,
                                 {{"beta_multiplicative", c.beta_multiplicative},
                                  {"w_zero", c.w_zero},
                                  {"summary", std::string("beta ") + (c.beta_multiplicative ? "is" : "is not") +
                                                  " multiplicative, Y (x)_A X " + (c.w_zero ? "= 0" : "!= 0")}}));
  }
  return {{"w_dim", oracle.w.dim()}, {"oracle_dim", oracle.algebra->dim()}};
}

}  // namespace

// ---------------------------------------------------------------------------

Report cmd_check(const Options& o) {
  Report r;
  r.command = "check";
  require_names(o, 1);
  Stopwatch sw(r);
  Environment env = load(o, r);
  sw.lap("load");
  const ContextEntry* c = context_or_failure(env, o.names[0], r);
  if (c == nullptr) return r;
  const ExactContext& ctx = c->context;
  const ExactnessCertificate& cert = ctx.certificate;
  r.primary = "exactness";
  r.verdicts.push_back(verdict("exactness", true,
                               {{"rank_inclusion", cert.rank_inclusion},
                                {"rank_difference", cert.rank_difference},
                                {"summary", "0 -> R -> S (+) T -> M -> 0 is exact"}}));
  const bool hyper = hypergenerated(ctx);
  r.verdicts.push_back(verdict("hypergenerator", hyper, {{"summary", hyper ? "M = S m + m T" : "S m + m T is a proper subspace"}}));
  const ExactPairVerdict pair = is_exact_pair(ctx);
  r.verdicts.push_back(verdict("exact_pair", pair.holds,
                               {{"tensor_dim", pair.tensor_dim},
                                {"gamma_rank", pair.gamma_rank},
                                {"m_dim", pair.m_dim},
                                {"coker_tensor_dim", pair.coker_tensor_dim},
                                {"summary", pair.holds ? "gamma: S (x)_R T -> M is bijective" : "gamma: S (x)_R T -> M is not bijective"}},
                               false));
  if (c->rigid) {
    r.verdicts.push_back(verdict("rigid", true,
                                 {{"hom_dim", c->rigid->hom.source().dim() == 0 ? 0 : c->rigid->hom.dim()},
                                  {"summary", "Hom(Y, X) = End(Y) f + f End(X)"}}));
  }
  sw.lap("checks");
  return r;
}

Report cmd_nct(const Options& o) {
  Report r;
  r.command = "nct";
  require_names(o, 1);
  Stopwatch sw(r);
  Environment env = load(o, r);
  r.inputs["oracle"] = o.oracle;
  sw.lap("load");
  const ContextEntry* c = context_or_failure(env, o.names[0], r);
  if (c == nullptr) return r;
  if ((o.oracle == "morita" && !c->morita) || (o.oracle == "pure" && !c->pure)) {
    throw Error(ErrorCode::OracleMismatch, "context '" + o.names[0] + "' is a " + c->family + " context, not " + o.oracle);
  }
  r.primary = "ring_axioms";
  std::optional<NcTensorRing> ring = ring_or_failure(o, c->context, r);
  sw.lap("build");
  if (!ring) return r;
  r.data["labels"] = ring->algebra->labels();

  const bool perturbed = section_perturbation_check(*ring);
  r.verdicts.push_back(verdict("section_perturbation", perturbed,
                               {{"summary", perturbed ? "products independent of the chosen representatives"
                                                      : "products depend on the chosen representatives"}}));

  if (o.oracle != "none") {
    BlockOracle oracle;
    Matrix psi;
    AlgebraPtr base;
    if (o.oracle == "morita") {
      oracle = nc_tensor_morita_oracle(c->morita->data);
      psi = morita_identification(*c->morita, *ring, oracle);
      base = c->morita->gamma;
    } else {
      oracle = nc_tensor_pure_oracle(*c->pure);
      psi = pure_identification(*c->pure, *ring, oracle);
      base = c->pure->ring;
    }
    const OracleComparison cmp = compare_structure(ring->algebra, oracle.algebra, psi);
    Json d = {{"bijective", cmp.bijective}, {"oracle_dim", oracle.algebra->dim()}};
    if (cmp.first_difference) d["first_difference"] = {cmp.first_difference->first, cmp.first_difference->second};
    d["summary"] = cmp.structure_equal ? "structure constants identical"
                                       : (cmp.bijective ? "structure constants differ" : "identification is not bijective");
    r.verdicts.push_back(verdict("oracle", cmp.structure_equal, d));
    r.primary = "oracle";
    r.data["oracle"] = collapse_verdicts(oracle, base, c->family, r);
    sw.lap("oracle");
  }

  const EndTReport end = end_t_check(*ring);
  r.verdicts.push_back(verdict("end_t", !end.ring_epi || end.isomorphic,
                               {{"ring_epi", end.ring_epi},
                                {"end_dim", end.end_dim},
                                {"isomorphic", end.isomorphic},
                                {"summary", std::string(end.isomorphic ? "ring = End_T(T (x)_R S)" : "ring != End_T(T (x)_R S)") +
                                                (end.ring_epi ? ", lambda is a ring epimorphism" : "")}}));
  try {
    const CoincidenceReport cc = commutative_coincidence_check(*ring);
    Json d = {{"summary", cc.equal ? "agrees with the commutative tensor product" : "differs from the commutative tensor product"}};
    if (cc.first_difference) d["first_difference"] = {cc.first_difference->first, cc.first_difference->second};
    r.verdicts.push_back(verdict("commutative_coincidence", cc.equal, d));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionFailed) throw;
  }
  sw.lap("checks");

  if (!o.emit_path.empty()) {
    std::ofstream out(o.emit_path);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.emit_path + "'");
    out << "field " << env.field.to_string() << "\n" << print_declaration(structconst_declaration("NCT", *ring->algebra));
    r.inputs["emit_algebra"] = o.emit_path;
  }
  return r;
}

Report cmd_tor(const Options& o) {
  Report r;
  r.command = "tor";
  require_names(o, 2);
  r.inputs["right"] = o.names[0];
  r.inputs["left"] = o.names[1];
  Stopwatch sw(r);
  Environment env = load(o, r);
  r.inputs["max_degree"] = o.max_degree;
  const Module t = module_operand(env, o.names[0], Side::Right);
  const Module s = module_operand(env, o.names[1], Side::Left);
  if (t.algebra() != s.algebra() && !same_structure(*t.algebra(), *s.algebra())) {
    throw Error(ErrorCode::AlgebraMismatch, "'" + o.names[0] + "' and '" + o.names[1] + "' are over different algebras");
  }
  r.inputs["dims"] = {{"ring", t.algebra()->dim()}, {"right", t.dim()}, {"left", s.dim()}};
  sw.lap("load");
  const TorResult tr = tor(t, s, o.max_degree);
  sw.lap("tor");
  r.data["tor_dims"] = sizes_json(tr.dims);
  r.data["certified"] = tr.certified;
  if (tr.vanishes_above) r.data["vanishes_above"] = *tr.vanishes_above;
  std::optional<std::size_t> first;
  for (std::size_t i = 1; i < tr.dims.size(); ++i) {
    if (tr.dims[i] != 0) {
      first = i;
      break;
    }
  }
  Json d = {{"summary", first ? "Tor_" + std::to_string(*first) + " has dimension " + std::to_string(tr.dims[*first])
                              : "Tor_i = 0 for 1 <= i <= " + std::to_string(o.max_degree)}};
  if (first) d["first_nonzero"] = *first;
  d["dims"] = plural_dims(tr.dims);
  r.verdicts.push_back(verdict("tor_vanishes", !first, d, false));
  r.primary = "tor_vanishes";
  return r;
}

Report cmd_theorem1(const Options& o) {
  Report r;
  r.command = "theorem1";
  require_names(o, 1);
  Stopwatch sw(r);
  Environment env = load(o, r);
  r.inputs["max_degree"] = o.max_degree;
  sw.lap("load");
  const ContextEntry* c = context_or_failure(env, o.names[0], r);
  if (c == nullptr) return r;
  r.primary = "criterion";
  std::optional<NcTensorRing> ring = ring_or_failure(o, c->context, r);
  if (!ring) return r;
  const ExactnessCertificate& cert = c->context.certificate;
  cap(o, "B", cert.dim_s + cert.dim_m + cert.dim_t);
  cap(o, "C", 4 * ring->dim());
  const ThetaData td = build_theta(*ring);
  sw.lap("build");

  const std::size_t bound = o.max_degree;
  auto crit_f = launch(o, [&] { return theorem1_criterion(td, bound); });
  auto loc_f = launch(o, [&] { return verify_localization_properties(td, 2); });
  auto pd_f = launch(o, [&]() -> std::pair<std::optional<PdReport>, std::optional<Error>> {
    try {
      return {pd_inequality_check(td, bound), std::nullopt};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionFailed && e.code() != ErrorCode::Inconclusive) throw;
      return {std::nullopt, e};
    }
  });
  std::optional<std::future<TauReport>> tau_f;
  std::optional<std::future<HomologicalVerdict>> lambda_f;
  if (c->extension) {
    tau_f = launch(o, [&] { return tau_comparison(*c->extension); });
    lambda_f = launch(o, [&] { return is_homological_up_to(c->context.lambda, bound); });
  }

  // Collect in a fixed order so the report does not depend on scheduling.
  try {
    const Theorem1Verdict v = crit_f.get();
    Json d = {{"bound", v.bound}, {"tor_dims", sizes_json(v.tor_dims)}};
    if (v.failing_degree) {
      d["failing_degree"] = *v.failing_degree;
      d["failing_dim"] = v.failing_dim;
      d["summary"] = "Tor_" + std::to_string(*v.failing_degree) + "^R(T, S) has dimension " + std::to_string(v.failing_dim);
    } else {
      d["summary"] = "Tor_i^R(T, S) = 0 for 1 <= i <= " + std::to_string(v.bound);
    }
    r.verdicts.push_back(verdict("criterion", v.holds, d, false));
    Json th = {{"ring_epi", v.theta.ring_epi}, {"unconditional", v.theta.unconditional}, {"tor_dims", sizes_json(v.theta.tor_dims)}};
    if (v.theta.failing_degree) th["failing_degree"] = *v.theta.failing_degree;
    th["summary"] = std::string("theta: B -> M_2(T (x)_R S) is ") + (v.theta.holds ? "" : "not ") + "homological up to degree " +
                    std::to_string(v.bound);
    r.verdicts.push_back(verdict("theta_homological", v.theta.holds, th, false));
    r.verdicts.push_back(verdict("agreement", true, {{"summary", "criterion and theta agree"}}));
    r.data["tor_dims"] = sizes_json(v.tor_dims);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InternalInconsistency) throw;
    Json d = error_json(e);
    d["summary"] = e.what();
    r.verdicts.push_back(Verdict{"agreement", Status::Fail, true, d});
  }

  const LocalizationReport loc = loc_f.get();
  r.verdicts.push_back(verdict("theta_ring_epi", loc.epi.holds,
                               {{"tensor_dim", loc.epi.tensor_dim},
                                {"target_dim", loc.epi.target_dim},
                                {"summary", "dim C (x)_B C = " + std::to_string(loc.epi.tensor_dim) + ", dim C = " +
                                                std::to_string(loc.epi.target_dim)}}));
  r.verdicts.push_back(verdict("tor1_b", loc.tor1_vanishes,
                               {{"tor_dims", sizes_json(loc.tor_dims)}, {"summary", "Tor^B(C, C) = " + plural_dims(loc.tor_dims)}}));
  r.verdicts.push_back(verdict("sigma_inverting", loc.sigma_inverting,
                               {{"source_dim", loc.sigma_source_dim},
                                {"target_dim", loc.sigma_target_dim},
                                {"rank", loc.sigma_rank},
                                {"summary", std::string("C (x)_B (B e1 -> B e2) is ") + (loc.sigma_inverting ? "" : "not ") + "bijective"}}));
  r.verdicts.push_back(verdict("sheiham_relations", loc.sheiham,
                               {{"summary", loc.sheiham ? "all four relations hold" : "fails: " + loc.sheiham_failure}}));

  auto [pd, skipped] = pd_f.get();
  if (pd) {
    const Json dims = {{"pd_RS", pd_json(pd->pd_rs)}, {"pd_BC", pd_json(pd->pd_bc)}, {"pd_TR", pd_json(pd->pd_tr)}, {"pd_CB", pd_json(pd->pd_cb)}};
    Json left = {{"pd_RS", dims["pd_RS"]}, {"pd_BC", dims["pd_BC"]}};
    left["summary"] = "pd _R S = " + pd->pd_rs.to_string() + ", pd _B C = " + pd->pd_bc.to_string();
    Json right = {{"pd_TR", dims["pd_TR"]}, {"pd_CB", dims["pd_CB"]}};
    right["summary"] = "pd T_R = " + pd->pd_tr.to_string() + ", pd C_B = " + pd->pd_cb.to_string();
    r.verdicts.push_back(verdict("pd_left", pd->left_ok, left));
    r.verdicts.push_back(verdict("pd_right", pd->right_ok, right));
  } else {
    Json d = error_json(*skipped);
    d["summary"] = std::string("skipped: ") + skipped->what();
    r.verdicts.push_back(Verdict{"pd_inequalities", Status::Inconclusive, false, d});
  }

  if (lambda_f) {
    const HomologicalVerdict h = lambda_f->get();
    Json d = {{"ring_epi", h.ring_epi}, {"unconditional", h.unconditional}, {"tor_dims", sizes_json(h.tor_dims)}};
    if (h.failing_degree) d["failing_degree"] = *h.failing_degree;
    d["summary"] = std::string("lambda: R -> S is ") + (h.holds ? "" : "not ") + "homological up to degree " + std::to_string(bound) +
                   ", Tor^R(S, S) = " + plural_dims(h.tor_dims);
    r.verdicts.push_back(verdict("lambda_homological", h.holds, d, false));
  }
  if (tau_f) {
    const TauReport tau = tau_f->get();
    Json d = {{"dim_b", tau.dim_b},
              {"dim_end", tau.dim_lambda},
              {"hom_back_dim", tau.hom_back_dim},
              {"tau_rank", tau.tau_rank},
              {"ring_epi", tau.ring_epi}};
    d["summary"] = std::string("tau ") + (tau.tau_bijective ? "is" : "is not") + " bijective, dim Hom_R(S/R, S) = " +
                   std::to_string(tau.hom_back_dim);
    r.verdicts.push_back(verdict("tau", tau.implication_holds.value_or(true), d));
  }
  sw.lap("suites");
  return r;
}

Report cmd_pd(const Options& o) {
  Report r;
  r.command = "pd";
  require_names(o, 1);
  Stopwatch sw(r);
  Environment env = load(o, r);
  r.inputs["max_degree"] = o.max_degree;
  sw.lap("load");
  const std::string& name = o.names[0];
  if (env.kind_of(name) == DeclKind::Context) {
    const ContextEntry* c = context_or_failure(env, name, r);
    if (c == nullptr) return r;
    std::optional<NcTensorRing> ring = ring_or_failure(o, c->context, r);
    if (!ring) return r;
    cap(o, "C", 4 * ring->dim());
    const ThetaData td = build_theta(*ring);
    try {
      const PdReport pd = pd_inequality_check(td, o.max_degree);
      r.data["pd"] = {{"pd_RS", pd_json(pd.pd_rs)}, {"pd_BC", pd_json(pd.pd_bc)}, {"pd_TR", pd_json(pd.pd_tr)}, {"pd_CB", pd_json(pd.pd_cb)}};
      r.verdicts.push_back(verdict("pd_left", pd.left_ok, {{"summary", "pd _R S = " + pd.pd_rs.to_string() + ", pd _B C = " + pd.pd_bc.to_string()}}));
      r.verdicts.push_back(verdict("pd_right", pd.right_ok, {{"summary", "pd T_R = " + pd.pd_tr.to_string() + ", pd C_B = " + pd.pd_cb.to_string()}}));
      r.primary = "pd_left";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PreconditionFailed && e.code() != ErrorCode::Inconclusive) throw;
      Json d = error_json(e);
      d["summary"] = std::string("skipped: ") + e.what();
      r.verdicts.push_back(Verdict{"pd_inequalities", Status::Inconclusive, false, d});
      r.primary = "pd_inequalities";
    }
    sw.lap("pd");
    return r;
  }
  r.inputs["module"] = name;
  const Module m = env.kind_of(name) == DeclKind::Module ? env.module(name).module : module_operand(env, name, Side::Left);
  r.inputs["side"] = to_string(m.side());
  r.inputs["dims"] = {{"ring", m.algebra()->dim()}, {"module", m.dim()}};
  auto direct_f = launch(o, [&] { return projective_dimension(m, o.max_degree); });
  auto simples_f = launch(o, [&] { return projective_dimension_via_simples(m, o.max_degree); });
  const ProjectiveDimension direct = direct_f.get();
  const ProjectiveDimension simples = simples_f.get();
  r.data["pd"] = pd_json(direct);
  r.verdicts.push_back(verdict("pd_routes_agree", direct == simples,
                               {{"minimal_resolution", pd_json(direct)},
                                {"via_simples", pd_json(simples)},
                                {"summary", "pd = " + direct.to_string() + " (minimal resolution), " + simples.to_string() + " (Tor against simples)"}}));
  r.primary = "pd_routes_agree";
  sw.lap("pd");
  return r;
}

Report cmd_rigid(const Options& o) {
  Report r;
  r.command = "rigid";
  require_names(o, 1);
  r.inputs["map"] = o.names[0];
  Stopwatch sw(r);
  Environment env = load(o, r);
  const ModuleMap& f = env.map(o.names[0]);
  r.inputs["dims"] = {{"ring", f.source.algebra()->dim()}, {"source", f.source.dim()}, {"target", f.target.dim()}};
  sw.lap("load");
  const RigidityReport rep = is_rigid(f);
  Json d = {{"hom_dim", rep.hom_dim}, {"span_dim", rep.span_dim}};
  d["summary"] = "dim Hom(Y, X) = " + std::to_string(rep.hom_dim) + ", dim (End(Y) f + f End(X)) = " + std::to_string(rep.span_dim);
  r.verdicts.push_back(verdict("rigid", rep.holds, d, false));
  r.primary = "rigid";
  if (rep.witness) {
    // The witness must be a homomorphism outside the span.
    const bool hom = is_module_map(f.source, f.target, *rep.witness);
    r.data["witness"] = matrix_json(*rep.witness);
    r.verdicts.push_back(verdict("witness", hom && !rep.holds,
                                 {{"summary", hom ? "witness is a homomorphism outside End(Y) f + f End(X)" : "witness is not a homomorphism"}}));
  } else if (rep.holds) {
    const RigidContext rc = context_from_rigid(f);
    const ExactnessCertificate& cert = rc.context.certificate;
    r.verdicts.push_back(verdict("rigid_context", true,
                                 {{"dims", {{"R", cert.dim_r}, {"S", cert.dim_s}, {"T", cert.dim_t}, {"M", cert.dim_m}}},
                                  {"summary", "(End(Y), End(X), Hom(Y, X), f) is an exact context"}}));
  }
  sw.lap("rigid");
  return r;
}

Report dispatch(const Options& o) {
  if (o.command == "check") return cmd_check(o);
  if (o.command == "nct") return cmd_nct(o);
  if (o.command == "tor") return cmd_tor(o);
  if (o.command == "theorem1") return cmd_theorem1(o);
  if (o.command == "pd") return cmd_pd(o);
  if (o.command == "rigid") return cmd_rigid(o);
  throw Error(ErrorCode::InvalidArgument, "unknown command '" + o.command + "'");
}

namespace {

int fail_with(std::ostream& err, const Error& e, int code) {
  Json j = {{"schema", kErrorSchema}, {"tool", {{"name", "excon"}, {"version", EXCON_VERSION}}}};
  j["error"] = error_json(e);
  j["exit_code"] = code;
  err << j.dump() << "\n";
  return code;
}

std::size_t env_max_dim() {
  const char* v = std::getenv("EXCON_MAX_DIM");
  if (v == nullptr || *v == '\0') return 256;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw Error(ErrorCode::InvalidArgument, std::string("EXCON_MAX_DIM must be a positive integer, got '") + v + "'");
  return static_cast<std::size_t>(n);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact contexts and noncommutative tensor products of finite-dimensional algebras", "excon"};
  app.set_version_flag("--version", std::string(EXCON_VERSION));
  app.require_subcommand(1);
  Options o;
  std::string field;
  std::string expect;

  struct Spec {
    const char* name;
    const char* help;
    const char* names_help;
  };
  const Spec specs[] = {
      {"check", "verify an exact context: exactness, hypergenerator, exact pair", "context name"},
      {"nct", "build the noncommutative tensor product of a context and check it", "context name"},
      {"tor", "dimensions of Tor_i(right, left) for 0 <= i <= --max-degree", "right module, left module"},
      {"theorem1", "Tor criterion, theta cross-check, localization and pd suites", "context name"},
      {"pd", "projective dimensions of a module, or the pd inequalities of a context", "module or context name"},
      {"rigid", "decide whether a module map is rigid", "map name"},
  };
  for (const auto& s : specs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("file", o.file, "presentation file")->required();
    sub->add_option("names", o.names, s.names_help)->required();
    sub->add_flag("--json", o.json, "machine-readable report");
    sub->add_flag("--timings", o.timings, "include wall-clock timings");
    sub->add_option("--max-degree", o.max_degree, "highest Tor degree and pd bound")->capture_default_str();
    sub->add_option("--field", field, "override the field: Q or Fp:<p>");
    sub->add_option("--expect", expect, "compare the primary verdict")->check(CLI::IsMember({"pass", "fail", "inconclusive"}));
    sub->add_option("--threads", o.threads, "worker threads for independent checks")->check(CLI::PositiveNumber);
    if (std::string(s.name) == "nct") {
      sub->add_option("--oracle", o.oracle, "closed-form comparison")->check(CLI::IsMember({"none", "morita", "pure"}));
      sub->add_option("--emit-algebra", o.emit_path, "write the ring as a structconst declaration");
    }
    sub->callback([&o, name = std::string(s.name)] { o.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << EXCON_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    return fail_with(err, Error(ErrorCode::InvalidArgument, e.what()), 2);
  }

  try {
    o.max_dim = env_max_dim();
    if (!field.empty()) o.field = Field::parse(field);
    if (!expect.empty()) o.expect = expect;
    const Report r = dispatch(o);
    if (o.json) {
      out << r.to_json(o.timings, o.expect).dump(2) << "\n";
    } else {
      out << r.to_text(o.timings, o.expect);
    }
    return r.exit_code(o.expect);
  } catch (const Error& e) {
    return fail_with(err, e, is_verification_failure(e.code()) ? 1 : 2);
  } catch (const std::exception& e) {
    return fail_with(err, Error(ErrorCode::InvalidArgument, e.what()), 2);
  }
}

}  // namespace excon::cli
