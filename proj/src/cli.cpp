#include "uncond/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "uncond/classifier.hpp"
#include "uncond/closed_walks.hpp"
#include "uncond/extremal_constructions.hpp"
#include "uncond/multiplier_norms.hpp"
#include "uncond/schatten_numeric.hpp"

namespace uncond {

namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double parse_p(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return kInfinity;
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    throw InputError("invalid exponent p: " + text);
  }
  if (used != text.size() || !(p > 0.0) || !std::isfinite(p)) {
    throw InputError("exponent p must be a positive number or inf, got " + text);
  }
  return p;
}

int parse_even_p(const std::string& text) {
  const double p = parse_p(text);
  if (std::isinf(p) || p != std::floor(p) || static_cast<long long>(p) % 2 != 0) {
    throw InputError("exponent p must be an even integer, got " + text);
  }
  return static_cast<int>(p);
}

Json p_json(double p) { return std::isinf(p) ? Json("inf") : Json(p); }

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (const Complex& z : v) out.push_back(complex_json(z));
  return out;
}

Json labeled(Json value, const char* label) { return Json{{"value", std::move(value)}, {"label", label}}; }

Json vertex_list(const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (const Vertex& v : vs) out.push_back(to_string(v));
  return out;
}

Json edge_list(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) out.push_back(Json::array({e.row, e.col}));
  return out;
}

Json support_json(const BipartiteSupport& s) {
  return Json{{"rows", s.n_rows()}, {"cols", s.n_cols()}, {"edges", edge_list(s.edges())}};
}

Json girth_json(const BipartiteSupport& s) {
  const auto g = even_girth(s);
  return labeled(g ? Json(g->length) : Json(nullptr), "exact");
}

Json counts_json(const EdgeCounts& m) {
  Json out = Json::array();
  for (const auto& [e, n] : m) out.push_back(Json::array({e.row, e.col, n}));
  return out;
}

// {"mode": "real"|"complex", "values": [[r, c, re(, im)], ...]}; unlisted
// edges get +1.
SignAssignment parse_signs(const BipartiteSupport& s, const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("signs JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("values") || !j["values"].is_array()) {
    throw InputError("signs JSON needs a \"values\" array");
  }
  const std::string mode_name = j.value("mode", std::string("complex"));
  if (mode_name != "real" && mode_name != "complex") throw InputError("signs mode must be real or complex");
  const SignMode mode = mode_name == "real" ? SignMode::Real : SignMode::Complex;
  std::vector<Complex> values(s.size(), Complex(1.0, 0.0));
  for (const auto& v : j["values"]) {
    if (!v.is_array() || v.size() < 3 || v.size() > 4 || !v[0].is_number_integer() ||
        !v[1].is_number_integer() || !v[2].is_number() || (v.size() == 4 && !v[3].is_number())) {
      throw InputError("each sign is [row, col, re] or [row, col, re, im]");
    }
    const Edge e{v[0].get<int>(), v[1].get<int>()};
    const auto idx = s.edge_index(e);
    if (!idx) {
      throw InputError("sign given for (" + std::to_string(e.row) + ", " + std::to_string(e.col) +
                       ") which is not an edge");
    }
    values[*idx] = Complex(v[2].get<double>(), v.size() == 4 ? v[3].get<double>() : 0.0);
  }
  return SignAssignment(s, std::move(values), mode);
}

Json parse_json_option(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error&) {
    throw InputError(std::string("invalid JSON for ") + what + ": " + text);
  }
}

IntegerSet integer_set_option(const std::string& text, const char* what) {
  if (text.empty()) throw InputError(std::string(what) + " is required");
  return parse_integer_set(text);
}

// Side length s if the support is a single cycle through every vertex.
std::optional<int> single_cycle_length(const BipartiteSupport& s) {
  if (s.n_rows() != s.n_cols() || s.n_rows() < 2 || s.size() != 2 * static_cast<std::size_t>(s.n_rows())) {
    return std::nullopt;
  }
  for (int i = 0; i < s.n_rows(); ++i) {
    if (s.row_neighbors(i).size() != 2 || s.col_neighbors(i).size() != 2) return std::nullopt;
  }
  const auto g = even_girth(s);
  if (!g || g->length != 2 * s.n_rows()) return std::nullopt;
  return s.n_rows();
}

struct ClosedForm {
  double value;
  std::string source;
};

std::optional<ClosedForm> closed_form_constant(const BipartiteSupport& s, double p, SignMode mode) {
  const UnconditionalityProfile profile = classify(s);
  if (profile.forest) return ClosedForm{1.0, "forest: every sign pattern factors into row and column phases"};
  if (p == 2.0) return ClosedForm{1.0, "p = 2: the Hilbert-Schmidt norm ignores unimodular signs"};
  if (profile.one_unconditional_at(p)) {
    return ClosedForm{1.0, "even p below the girth: no closed walk relation of length p is off-diagonal"};
  }
  const bool endpoint = p == 1.0 || std::isinf(p);
  if (const auto cycle = single_cycle_length(s); cycle && endpoint) {
    if (mode == SignMode::Real) {
      return ClosedForm{cycle_real_constant(*cycle), "cycle multiplier endpoint norm sec(pi/2s)"};
    }
    return ClosedForm{cycle_complex_constant(*cycle).value,
                      "cycle multiplier endpoint norm maximized over theta (numerically resolved)"};
  }
  const int n = s.n_rows();
  if (s.n_cols() == n && s.size() == static_cast<std::size_t>(n) * n && n >= 2) {
    if (mode == SignMode::Complex) {
      const double expo = std::isinf(p) ? 0.5 : std::abs(0.5 - 1.0 / p);
      return ClosedForm{std::pow(static_cast<double>(n), expo), "full square support: n^|1/2 - 1/p|"};
    }
    if (n == 3 && endpoint) {
      return ClosedForm{5.0 / 3.0, "full 3x3 support: Fourier multiplier (-1, 1, 1) on Z/3, norm 5/3"};
    }
  }
  return std::nullopt;
}

std::uint64_t walk_budget(const std::optional<std::uint64_t>& flag, const CliEnvironment& env) {
  if (flag) return *flag;
  if (env.budget) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(*env.budget, &used);
      if (used == env.budget->size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    throw InputError("UNCOND_BUDGET must be a positive integer, got " + *env.budget);
  }
  return kDefaultWalkBudget;
}

// Flattens the report into "key: value" lines.
void render_text(const Json& j, const std::string& prefix, std::ostringstream& out) {
  auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_text(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  if (j.is_array()) {
    const bool flat = std::all_of(j.begin(), j.end(), [](const Json& v) {
      return v.is_primitive() || (v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& w) {
                                    return w.is_primitive();
                                  }));
    });
    if (flat) {
      out << prefix << ": " << j.dump() << '\n';
      return;
    }
    for (std::size_t i = 0; i < j.size(); ++i) render_text(j[i], prefix + "[" + std::to_string(i) + "]", out);
    return;
  }
  out << prefix << ": " << scalar(j) << '\n';
}

struct Options {
  bool json = false;
  bool timing = false;
  std::optional<std::uint64_t> budget;

  std::string path;
  bool factorize = false;
  std::string signs;

  std::string p = "inf";
  std::string mode = "real";
  std::size_t trials = 64;
  std::uint64_t seed = 1;

  std::string kind;
  int k = 0;
  int max_level = 20;
  int j = 1;
  std::string lambda;
  std::optional<int> row;
  std::optional<int> col;
  std::optional<std::string> umap_p;

  int s = 3;
  int rows = 0;
  int cols = 0;
  std::string r_set;
  std::string c_set;
  int n = 2;
  long long n_count = 0;
  long long m_count = 0;
  long long e_count = 0;
  std::string matrix;
  double tol = kDefaultPsdTolerance;
  std::optional<double> theta_arg;
  int modulus = 0;
  std::string phi;
};

Json cmd_classify(const Options& o) {
  const SupportDocument doc = parse_support_document(read_file(o.path));
  const BipartiteSupport& s = doc.support;
  const UnconditionalityProfile profile = classify(s);
  Json report{{"input", {{"path", o.path}, {"rows", s.n_rows()}, {"cols", s.n_cols()}, {"edges", s.size()}}}};
  Json prof{{"forest", profile.forest},
            {"even_girth", labeled(profile.even_girth ? Json(*profile.even_girth) : Json(nullptr), "exact")}};
  if (profile.all_p) {
    prof["one_unconditional_p"] = "all";
  } else {
    prof["one_unconditional_p"] = profile.even_p;
  }
  prof["description"] = profile.describe_p();
  prof["v_interpolation_constant_1"] = profile.v_interpolation_constant_1;
  if (profile.cycle_witness) {
    prof["certificate"] = {{"kind", "cycle"}, {"cycle", vertex_list(profile.cycle_witness->vertices)}};
  } else {
    prof["certificate"] = {{"kind", "factorization"},
                           {"note", "every unimodular sign pattern factors as zeta(c) eta(r)"}};
  }
  report["profile"] = prof;
  report["star_union"] = star_union_tensor_verdict(s);
  if (o.factorize) {
    if (!profile.forest) {
      report["factorization"] = {{"available", false}, {"cycle", vertex_list(profile.cycle_witness->vertices)}};
    } else {
      const SignAssignment eps =
          o.signs.empty() ? SignAssignment::ones(s, SignMode::Complex) : parse_signs(s, read_file(o.signs));
      const ForestFactorization f = forest_factorize(s, eps);
      double err = 0.0;
      for (std::size_t q = 0; q < s.size(); ++q) {
        const Edge& e = s.edges()[q];
        err = std::max(err, std::abs(f.zeta[static_cast<std::size_t>(e.col)] *
                                         f.eta[static_cast<std::size_t>(e.row)] - eps[q]));
      }
      report["factorization"] = {{"available", true},
                                 {"zeta", complex_list(f.zeta)},
                                 {"eta", complex_list(f.eta)},
                                 {"max_error", labeled(err, "exact")}};
    }
  }
  return report;
}

Json cmd_constant(const Options& o) {
  const BipartiteSupport s = parse_support(read_file(o.path));
  const double p = parse_p(o.p);
  if (o.mode != "real" && o.mode != "complex") throw InputError("--mode must be real or complex");
  const SignMode mode = o.mode == "real" ? SignMode::Real : SignMode::Complex;
  SearchOptions opt;
  opt.trials = o.trials;
  opt.seed = o.seed;
  const ConstantEstimate est = mode == SignMode::Real ? real_unconditional_constant(s, p, opt)
                                                      : complex_unconditional_constant(s, p, opt);
  Json report{{"input", {{"path", o.path}, {"rows", s.n_rows()}, {"cols", s.n_cols()}, {"edges", s.size()}}},
              {"p", p_json(p)},
              {"mode", o.mode}};
  report["estimate"] = {{"value", est.value},
                        {"label", "lower-bound"},
                        {"exhaustive_signs", est.exhaustive_signs},
                        {"signs", complex_list(est.signs)},
                        {"coefficients", complex_list(est.coefficients)}};
  if (const auto exact = closed_form_constant(s, p, mode)) {
    report["exact"] = {{"value", exact->value}, {"label", "exact"}, {"source", exact->source}};
  } else {
    report["exact"] = nullptr;
  }
  return report;
}

Json cmd_walks(const Options& o, const CliEnvironment& env) {
  const BipartiteSupport s = parse_support(read_file(o.path));
  const int p = parse_even_p(o.p);
  const std::uint64_t budget = walk_budget(o.budget, env);
  const RelationTable table = relation_table(s, p / 2, budget);
  std::uint64_t walks = 0;
  bool diagonal = true;
  Json relations = Json::array();
  for (const auto& [rel, count] : table) {
    walks += count;
    diagonal = diagonal && rel.alpha == rel.beta;
    relations.push_back({{"alpha", counts_json(rel.alpha)},
                         {"beta", counts_json(rel.beta)},
                         {"count", count},
                         {"indecomposable", is_closed_walk_relation(rel)}});
  }
  return Json{{"input", {{"path", o.path}, {"rows", s.n_rows()}, {"cols", s.n_cols()}, {"edges", s.size()}}},
              {"p", p},
              {"budget", budget},
              {"walks", labeled(walks, "exact")},
              {"all_diagonal", diagonal},
              {"relations", relations}};
}

SupportFamily family_from(const Options& o) {
  if (o.path == "path_union") return SupportFamily::path_union(o.j);
  if (o.path == "path_union_plus") return SupportFamily::path_union_plus(o.j);
  if (o.path == "hankel") return SupportFamily::hankel(integer_set_option(o.lambda, "--lambda"));
  return parse_family_levels(read_file(o.path));
}

Json jk_json(const JkReport& r) {
  Json out{{"k", r.k},
           {"max_level", r.max_level},
           {"verdict", r.holds ? "holds up to level " + std::to_string(r.max_level) : std::string("counterexample")},
           {"label", "evidence"},
           {"holds", r.holds},
           {"paths_checked", r.paths_checked},
           {"max_kill_level", r.max_kill_level}};
  Json evidence = Json::array();
  for (const auto& e : r.evidence) evidence.push_back({{"path", vertex_list(e.path.vertices)}, {"kill_level", e.kill_level}});
  out["evidence"] = evidence;
  if (r.counterexample) {
    Json cycles = Json::array();
    for (const auto& [level, c] : r.counterexample->cycles) {
      cycles.push_back({{"level", level}, {"cycle", vertex_list(c.vertices)}});
    }
    out["counterexample"] = {{"path", vertex_list(r.counterexample->path.vertices)}, {"cycles", cycles}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

Json cmd_family(const Options& o) {
  const SupportFamily family = family_from(o);
  Json report{{"family", {{"name", o.path}, {"description", family.description()}}}};
  if (o.umap_p) {
    const UmapVerdict v = umap_verdict_even_p(family, parse_even_p(*o.umap_p), o.max_level);
    report["umap"] = {{"p", v.p}, {"equivalence", v.equivalence}, {"jk", jk_json(v.jk)}};
  } else {
    if (o.k < 1) throw InputError("--k must be >= 1");
    report["jk"] = jk_json(check_Jk(family, o.k, o.max_level));
  }
  if (o.row || o.col) {
    if (!o.row || !o.col) throw InputError("--row and --col go together");
    const AsymptoticDistance d = asymptotic_distance_lower_bound(family, *o.row, *o.col, o.max_level);
    report["asymptotic_distance"] = {{"row", *o.row},
                                     {"col", *o.col},
                                     {"value", d.distance ? Json(*d.distance) : Json("inf")},
                                     {"label", "lower-bound"},
                                     {"attained_at_deletion_level", d.level}};
  }
  return report;
}

Json cmd_construct(const Options& o) {
  Json report{{"kind", o.kind}};
  auto with_support = [&](const BipartiteSupport& s) {
    report["support"] = support_json(s);
    report["even_girth"] = girth_json(s);
  };
  if (o.kind == "cycle") {
    with_support(cycle_support(o.s));
  } else if (o.kind == "hankel") {
    with_support(hankel_support(integer_set_option(o.lambda, "--lambda"), o.rows, o.cols));
  } else if (o.kind == "fano") {
    const BipartiteSupport s = fano_incidence();
    with_support(s);
    report["pairwise_balanced"] = is_pairwise_balanced(s);
  } else if (o.kind == "transfer") {
    const TransferResult t = transfer_support(integer_set_option(o.r_set, "--r-set"),
                                              integer_set_option(o.c_set, "--c-set"),
                                              integer_set_option(o.lambda, "--lambda"));
    with_support(t.support);
    report["valid"] = t.valid;
    report["collision"] = t.collision ? Json(*t.collision) : Json(nullptr);
  } else if (o.kind == "independence") {
    const IndependenceResult r = is_n_independent(integer_set_option(o.lambda, "--lambda"), o.n);
    report["n"] = o.n;
    report["independent"] = r.independent;
    report["witness"] = r.witness ? Json::array({r.witness->first, r.witness->second}) : Json(nullptr);
  } else if (o.kind == "moore") {
    const BipartiteSupport s = parse_support(read_file(o.path));
    const MooreReport m = moore_check(s, o.k);
    report["k"] = o.k;
    report["girth_ok"] = m.girth_ok;
    report["slack"] = labeled(m.slack, "exact");
    report["meaningful"] = m.meaningful;
  } else if (o.kind == "moore-slack") {
    const MooreSlack m = moore_slack(o.n_count, o.m_count, o.e_count, o.k);
    report["slack"] = labeled(m.slack, "exact");
    report["meaningful"] = m.meaningful;
  } else {
    throw InputError("unknown construction " + o.kind +
                     " (cycle, hankel, fano, transfer, independence, moore, moore-slack)");
  }
  return report;
}

std::vector<Complex> parse_phi_values(const std::string& text) {
  const Json j = parse_json_option(text, "--phi");
  if (!j.is_array()) throw InputError("--phi must be a JSON array");
  std::vector<Complex> out;
  for (const auto& v : j) {
    if (v.is_number()) {
      out.emplace_back(v.get<double>(), 0.0);
    } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      out.emplace_back(v[0].get<double>(), v[1].get<double>());
    } else {
      throw InputError("--phi entries are numbers or [re, im] pairs");
    }
  }
  return out;
}

Json cmd_norm(const Options& o) {
  Json report{{"kind", o.kind}};
  if (o.kind == "schatten") {
    const ComplexMatrix m = parse_matrix(read_file(o.matrix));
    const double p = parse_p(o.p);
    report["p"] = p_json(p);
    report["singular_values"] = singular_values(m);
    report["norm"] = labeled(schatten_norm(m, p), "exact");
  } else if (o.kind == "cycle") {
    const double arg = o.theta_arg.value_or(std::numbers::pi / o.s);
    report["s"] = o.s;
    report["theta_arg"] = arg;
    report["norm"] = labeled(cycle_norm_endpoint(o.s, std::polar(1.0, arg)), "exact");
  } else if (o.kind == "positive") {
    const ComplexMatrix m = parse_matrix(read_file(o.matrix));
    report["norm"] = labeled(positive_multiplier_norm(m, o.tol), "exact");
  } else if (o.kind == "fourier") {
    const std::vector<Complex> values = parse_phi_values(o.phi);
    CyclicSpectrum spec;
    spec.modulus = o.modulus > 0 ? o.modulus : static_cast<int>(values.size());
    for (std::size_t g = 0; g < values.size(); ++g) {
      spec.lambda.push_back(static_cast<int>(g));
      spec.phi[static_cast<int>(g)] = values[g];
    }
    const double p = parse_p(o.p);
    report["modulus"] = spec.modulus;
    report["p"] = p_json(p);
    report["inverse_transform"] = complex_list(inverse_fourier(spec));
    report["norm"] = labeled(fourier_multiplier_norm(spec, p), "exact");
  } else {
    throw InputError("unknown norm " + o.kind + " (schatten, cycle, positive, fourier)");
  }
  return report;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args, const CliEnvironment& env) {
  CliResult result;
  Options o;
  CLI::App app{"Unconditionality of elementary matrices in Schatten classes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Print the JSON report");
  app.add_flag("--timing", o.timing, "Add wall-clock timing to the report");
  app.add_option("--budget", o.budget, "Closed walk budget (overrides UNCOND_BUDGET)");

  auto* classify_cmd = app.add_subcommand("classify", "Unconditionality profile of a support");
  classify_cmd->add_option("support", o.path, "Edge-list JSON file")->required();
  classify_cmd->add_flag("--factorize", o.factorize, "Factor a sign pattern on a forest");
  classify_cmd->add_option("--signs", o.signs, "Sign JSON file for --factorize");

  auto* constant_cmd = app.add_subcommand("constant", "Search lower bound for the unconditional constant");
  constant_cmd->add_option("support", o.path, "Edge-list JSON file")->required();
  constant_cmd->add_option("--p", o.p, "Exponent p > 0 or inf");
  constant_cmd->add_option("--mode", o.mode, "real or complex signs");
  constant_cmd->add_option("--trials", o.trials, "Search trials")->check(CLI::PositiveNumber);
  constant_cmd->add_option("--seed", o.seed, "Search seed");

  auto* walks_cmd = app.add_subcommand("walks", "Closed walk relation table");
  walks_cmd->add_option("support", o.path, "Edge-list JSON file")->required();
  walks_cmd->add_option("--p", o.p, "Even walk length")->required();

  auto* family_cmd = app.add_subcommand("family", "Bounded evidence for J_k on a family of supports");
  family_cmd->add_option("family", o.path, "path_union, path_union_plus, hankel or a levels JSON file")->required();
  family_cmd->add_option("--k", o.k, "Path/cycle parameter k");
  family_cmd->add_option("--max-level", o.max_level, "Deepest level examined")->check(CLI::PositiveNumber);
  family_cmd->add_option("--j", o.j, "Parameter j of the built-in path families");
  family_cmd->add_option("--lambda", o.lambda, "Integer set (JSON array) for hankel");
  family_cmd->add_option("--row", o.row, "Row for the asymptotic distance");
  family_cmd->add_option("--col", o.col, "Column for the asymptotic distance");
  family_cmd->add_option("--p", o.umap_p, "Even p: report the approximation property verdict");

  auto* construct_cmd = app.add_subcommand("construct", "Extremal constructions and bounds");
  construct_cmd->add_option("kind", o.kind, "cycle, hankel, fano, transfer, independence, moore, moore-slack")
      ->required();
  construct_cmd->add_option("--s", o.s, "Cycle half-length");
  construct_cmd->add_option("--lambda", o.lambda, "Integer set (JSON array)");
  construct_cmd->add_option("--rows", o.rows, "Rows of the truncation");
  construct_cmd->add_option("--cols", o.cols, "Columns of the truncation");
  construct_cmd->add_option("--r-set", o.r_set, "Row integer set (JSON array)");
  construct_cmd->add_option("--c-set", o.c_set, "Column integer set (JSON array)");
  construct_cmd->add_option("--n", o.n, "Multiset size for independence");
  construct_cmd->add_option("--support", o.path, "Edge-list JSON file for moore");
  construct_cmd->add_option("--k", o.k, "Girth parameter k");
  construct_cmd->add_option("--n-count", o.n_count, "Columns n for moore-slack");
  construct_cmd->add_option("--m-count", o.m_count, "Rows m for moore-slack");
  construct_cmd->add_option("--e-count", o.e_count, "Edges e for moore-slack");

  auto* norm_cmd = app.add_subcommand("norm", "Schatten and closed-form multiplier norms");
  norm_cmd->add_option("kind", o.kind, "schatten, cycle, positive or fourier")->required();
  norm_cmd->add_option("--matrix", o.matrix, "Matrix JSON file");
  norm_cmd->add_option("--p", o.p, "Exponent p > 0 or inf");
  norm_cmd->add_option("--s", o.s, "Cycle half-length");
  norm_cmd->add_option("--theta-arg", o.theta_arg, "Argument of theta in radians (default pi/s)");
  norm_cmd->add_option("--tol", o.tol, "PSD tolerance (default 1e-9 max diagonal)");
  norm_cmd->add_option("--modulus", o.modulus, "Order of the cyclic group (default: length of --phi)");
  norm_cmd->add_option("--phi", o.phi, "Multiplier values on 0..s-1 (JSON array)");

  for (CLI::App* sub : {classify_cmd, constant_cmd, walks_cmd, family_cmd, construct_cmd, norm_cmd}) {
    sub->fallthrough();
  }

  std::ostringstream out, err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? kExitOk : kExitInputError;
    return result;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string command;
  try {
    Json body;
    std::optional<std::size_t> trials;
    std::optional<std::uint64_t> seed;
    if (classify_cmd->parsed()) {
      command = "classify";
      body = cmd_classify(o);
    } else if (constant_cmd->parsed()) {
      command = "constant";
      body = cmd_constant(o);
      trials = o.trials;
      seed = o.seed;
    } else if (walks_cmd->parsed()) {
      command = "walks";
      body = cmd_walks(o, env);
    } else if (family_cmd->parsed()) {
      command = "family";
      body = cmd_family(o);
    } else if (construct_cmd->parsed()) {
      command = "construct";
      body = cmd_construct(o);
    } else {
      command = "norm";
      body = cmd_norm(o);
    }
    Json report{{"schema", 1}, {"command", command}};
    for (auto& [k, v] : body.items()) report[k] = v;
    report["reproducibility"] = {{"seed", seed ? Json(*seed) : Json(nullptr)},
                                 {"trials", trials ? Json(*trials) : Json(nullptr)},
                                 {"version", kVersion}};
    if (o.timing) {
      report["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    }
    if (o.json) {
      out << report.dump(2) << '\n';
    } else {
      render_text(report, "", out);
    }
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << " (reached " << e.reached() << ")\n";
    result.exit_code = kExitBudgetExceeded;
  } catch (const NotAForestError& e) {
    err << "input error: " << e.what() << "; cycle";
    for (const Vertex& v : e.witness().vertices) err << ' ' << to_string(v);
    err << '\n';
    result.exit_code = kExitInputError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    result.exit_code = kExitInputError;
  } catch (const NotPositiveError& e) {
    err << "input error: " << e.what() << '\n';
    result.exit_code = kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    result.exit_code = kExitFailure;
  }
  result.out = out.str();
  result.err = err.str();
  return result;
}

}  // namespace uncond
