// Copyright 2026 The rittkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rittkit command line: experiment runner on top of the C API.
//
// Exit codes: 0 success, 1 failed check or numerical failure, 2 usage error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rittkit/rittkit.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(rk_status s) {
  if (s == RK_OK) return;
  std::string msg = rk_last_error_message();
  if (s == RK_INVALID_ARGUMENT || s == RK_DIMENSION_MISMATCH) throw UsageError(msg);
  throw RunFailure(msg);
}

struct MatDeleter {
  void operator()(rk_mat* m) const { rk_mat_destroy(m); }
};
struct OpDeleter {
  void operator()(rk_superop* t) const { rk_superop_destroy(t); }
};
using MatPtr = std::unique_ptr<rk_mat, MatDeleter>;
using OpPtr = std::unique_ptr<rk_superop, OpDeleter>;

struct DecompGuard {
  rk_decomp_result r{};
  ~DecompGuard() { rk_decomp_result_free(&r); }
};

// "4", "1.5", "4/3" or "inf"
double parse_exponent(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) throw UsageError("cannot parse exponent '" + text + "'");
    return v;
  };
  auto slash = text.find('/');
  if (slash == std::string::npos) return number(text);
  double den = number(text.substr(slash + 1));
  if (den == 0) throw UsageError("zero denominator in exponent '" + text + "'");
  return number(text.substr(0, slash)) / den;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row(header); }
  void row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out_ << ',';
      out_ << csv_field(fields[i]);
    }
    out_ << "\r\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw RunFailure("write to '" + path + "' failed");
}

int thread_limit() {
  int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("RITTKIT_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw UsageError("RITTKIT_THREADS must be a positive integer");
    return static_cast<int>(std::min<long>(v, hw));
  }
  return hw;
}

json mat_json(const rk_mat* m) {
  int n = rk_mat_dim(m);
  std::vector<double> re(static_cast<std::size_t>(n) * n), im(re.size());
  check(rk_mat_get(m, re.data(), im.data()));
  json rows = json::array();
  for (int i = 0; i < n; ++i) {
    json row = json::array();
    for (int j = 0; j < n; ++j) {
      std::size_t k = static_cast<std::size_t>(j) * n + i;
      row.push_back({re[k], im[k]});
    }
    rows.push_back(row);
  }
  return rows;
}

// Options shared by the subcommands; unset values may come from --config.
struct Config {
  std::string p_text;
  double alpha = 1.0;
  int n = 0;
  std::vector<int> n_list = {4, 8, 16, 32, 64};
  std::optional<std::uint64_t> seed;
  double tol = 0.0;
  long k_max = 0;
  std::string splitter = "rad-optimal";
  std::string kind = "col";
  std::string suite;
  std::string op = "left";
  double rho = 1.0;
  double c = 0.9;
  std::string out;
  std::string format = "json";
  std::string config_path;
};

// Fills every option the command line left unset from the JSON config.
void apply_config(const std::string& command, CLI::App& sub, Config& cfg) {
  if (cfg.config_path.empty()) return;
  std::ifstream f(cfg.config_path);
  if (!f) throw UsageError("cannot read config '" + cfg.config_path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::exception& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || j.value("schema", 0) != 1) throw UsageError("config must be an object with \"schema\": 1");
  if (j.contains("command") && j["command"] != command)
    throw UsageError("config is for command '" + j["command"].get<std::string>() + "'");
  auto unset = [&](const char* flag) {
    CLI::Option* o = sub.get_option_no_throw(flag);
    return o == nullptr || o->count() == 0;
  };
  try {
    if (j.contains("p") && unset("--p")) cfg.p_text = j["p"].is_string() ? j["p"].get<std::string>() : fmt(j["p"].get<double>());
    if (j.contains("alpha") && unset("--alpha")) cfg.alpha = j["alpha"];
    if (j.contains("n") && unset("--n")) cfg.n = j["n"];
    if (j.contains("n_list") && unset("--n-list")) cfg.n_list = j["n_list"].get<std::vector<int>>();
    if (j.contains("seed") && unset("--seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("tol") && unset("--tol")) cfg.tol = j["tol"];
    if (j.contains("k_max") && unset("--k-max")) cfg.k_max = j["k_max"];
    if (j.contains("splitter") && unset("--splitter")) cfg.splitter = j["splitter"];
    if (j.contains("kind") && unset("--kind")) cfg.kind = j["kind"];
    if (j.contains("suite") && unset("suite")) cfg.suite = j["suite"];
    if (j.contains("operator") && unset("--operator")) cfg.op = j["operator"];
    if (j.contains("rho") && unset("--rho")) cfg.rho = j["rho"];
    if (j.contains("c") && unset("--c")) cfg.c = j["c"];
    if (j.contains("out") && unset("--out")) cfg.out = j["out"];
    if (j.contains("format") && unset("--format")) cfg.format = j["format"];
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
}

std::uint64_t need_seed(const Config& cfg) {
  if (!cfg.seed) throw UsageError("--seed is required for this command");
  return *cfg.seed;
}

double need_p(const Config& cfg) {
  if (cfg.p_text.empty()) throw UsageError("--p is required");
  return parse_exponent(cfg.p_text);
}

OpPtr make_operator(const Config& cfg) {
  rk_superop* t = nullptr;
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  if (cfg.op == "left" || cfg.op == "right")
    check(rk_superop_diag_a(cfg.n, cfg.op == "right", &t));
  else if (cfg.op == "toeplitz")
    check(rk_markov_toeplitz(cfg.n, cfg.c, &t));
  else
    throw UsageError("unknown operator '" + cfg.op + "' (left, right, toeplitz)");
  return OpPtr(t);
}

int cmd_growth(const Config& cfg) {
  const double p = need_p(cfg);
  if (p == 2.0) throw UsageError("growth: p = 2 has no column/row gap");
  if (cfg.n_list.empty()) throw UsageError("growth: empty --n-list");
  std::vector<rk_growth_row> rows(cfg.n_list.size());
  rk_growth_summary s{};
  check(rk_growth(p, cfg.n_list.data(), cfg.n_list.size(), thread_limit(), rows.data(), &s));
  json summary = {{"slope", s.slope},           {"intercept", s.intercept}, {"residual", s.residual},
                  {"theta", s.theta},           {"expected_slope", s.expected_slope}};
  if (cfg.format == "csv") {
    Csv csv({"n", "col_norm", "row_norm", "ratio"});
    for (const auto& r : rows) csv.row({std::to_string(r.n), fmt(r.col_norm), fmt(r.row_norm), fmt(r.ratio)});
    emit(csv.str(), cfg.out);
    (cfg.out.empty() ? std::cerr : std::cout) << summary.dump(2) << "\n";
  } else {
    json table = json::array();
    for (const auto& r : rows)
      table.push_back({{"n", r.n}, {"col_norm", r.col_norm}, {"row_norm", r.row_norm}, {"ratio", r.ratio}});
    emit(json{{"p", p}, {"rows", table}, {"summary", summary}}.dump(2) + "\n", cfg.out);
  }
  return kExitOk;
}

json decomp_json(const rk_decomp_result& r, bool with_parts) {
  json j = {{"residual", r.residual}, {"constant", r.constant}, {"col_sq", r.col_sq},
            {"row_sq", r.row_sq},     {"k_used", r.k_used}};
  if (with_parts) {
    j["x1"] = mat_json(r.x1);
    j["x2"] = mat_json(r.x2);
  }
  return j;
}

std::string decomp_csv(const rk_decomp_result& r) {
  Csv csv({"residual", "constant", "col_sq", "row_sq", "k_used"});
  csv.row({fmt(r.residual), fmt(r.constant), fmt(r.col_sq), fmt(r.row_sq), std::to_string(r.k_used)});
  return csv.str();
}

rk_decomp_options decomp_options(const Config& cfg) {
  rk_decomp_options o = rk_decomp_default_options();
  check(rk_splitter_parse(cfg.splitter.c_str(), &o.splitter));
  if (cfg.tol > 0) o.tol = cfg.tol;
  if (cfg.k_max < 0) throw UsageError("--k-max must be >= 0");
  o.k = cfg.k_max;
  o.alpha = cfg.alpha;
  return o;
}

int cmd_decompose(const Config& cfg) {
  const double p = need_p(cfg);
  if (!(p > 1.0 && p < 2.0)) throw UsageError("decompose: p must lie in (1, 2)");
  const std::uint64_t seed = need_seed(cfg);
  OpPtr t = make_operator(cfg);
  rk_mat* xr = nullptr;
  check(rk_mat_random(cfg.n, seed, 0, &xr));
  MatPtr x(xr);
  rk_decomp_options o = decomp_options(cfg);
  DecompGuard g;
  check(rk_decompose(t.get(), x.get(), p, &o, &g.r));
  if (cfg.format == "csv") {
    emit(decomp_csv(g.r), cfg.out);
  } else {
    json j = {{"p", p}, {"n", cfg.n}, {"seed", seed}, {"operator", cfg.op}, {"splitter", cfg.splitter}};
    j["result"] = decomp_json(g.r, true);
    emit(j.dump(2) + "\n", cfg.out);
  }
  return kExitOk;
}

int cmd_check(const Config& cfg) {
  if (cfg.suite.empty()) throw UsageError("check: suite name required");
  const std::uint64_t seed = need_seed(cfg);
  char* text = nullptr;
  int passed = 0;
  check(rk_check_suite(cfg.suite.c_str(), seed, &text, &passed));
  std::string doc(text);
  rk_string_free(text);
  if (cfg.format == "csv") {
    json j = json::parse(doc);
    Csv csv({"suite", "name", "passed", "value", "bound"});
    for (const auto& c : j["checks"])
      csv.row({c["suite"].get<std::string>(), c["name"].get<std::string>(), c["passed"].get<bool>() ? "true" : "false",
               fmt(c["value"].get<double>()), fmt(c["bound"].get<double>())});
    emit(csv.str(), cfg.out);
  } else {
    emit(doc + "\n", cfg.out);
  }
  return passed ? kExitOk : kExitFail;
}

int cmd_sqfun(const Config& cfg) {
  const std::uint64_t seed = need_seed(cfg);
  OpPtr t = make_operator(cfg);
  rk_mat* xr = nullptr;
  check(rk_mat_random(cfg.n, seed, 0, &xr));
  MatPtr x(xr);
  rk_sq_spec spec = rk_sq_default_spec();
  spec.p = need_p(cfg);
  spec.alpha = cfg.alpha;
  spec.rho = cfg.rho;
  if (cfg.tol > 0) spec.tol = cfg.tol;
  if (cfg.k_max > 0) spec.k_max = cfg.k_max;
  check(rk_sq_kind_parse(cfg.kind.c_str(), &spec.kind));
  rk_sq_result r{};
  check(rk_square_function(t.get(), x.get(), &spec, &r));
  if (cfg.format == "csv") {
    Csv csv({"kind", "value", "lower", "upper", "tail_bound", "k_used", "converged"});
    csv.row({cfg.kind, fmt(r.value), fmt(r.lower), fmt(r.upper), fmt(r.tail_bound), std::to_string(r.k_used),
             r.converged ? "true" : "false"});
    emit(csv.str(), cfg.out);
  } else {
    json j = {{"p", spec.p},         {"alpha", spec.alpha},   {"rho", spec.rho},         {"kind", cfg.kind},
              {"operator", cfg.op},  {"n", cfg.n},            {"seed", seed},            {"value", r.value},
              {"lower", r.lower},    {"upper", r.upper},      {"tail_bound", r.tail_bound},
              {"k_used", r.k_used},  {"converged", r.converged != 0}};
    emit(j.dump(2) + "\n", cfg.out);
  }
  return r.converged ? kExitOk : kExitFail;
}

int cmd_markov(const Config& cfg) {
  const std::uint64_t seed = need_seed(cfg);
  const double p = need_p(cfg);
  rk_superop* tr = nullptr;
  if (cfg.n < 1) throw UsageError("--n must be >= 1");
  check(rk_markov_toeplitz(cfg.n, cfg.c, &tr));
  OpPtr t(tr);
  rk_markov_certificate cert{};
  check(rk_markov_validate(t.get(), &cert));
  const std::size_t d = static_cast<std::size_t>(cfg.n) * cfg.n;
  std::vector<double> re(d), im(d);
  check(rk_superop_spectrum(t.get(), re.data(), im.data()));
  json spectrum = json::array();
  for (std::size_t i = 0; i < d; ++i) spectrum.push_back({re[i], im[i]});
  json j = {{"n", cfg.n}, {"c", cfg.c}, {"p", p}, {"seed", seed}, {"spectrum", spectrum}};
  j["certificate"] = {{"unital", cert.unital != 0},
                      {"trace_preserving", cert.trace_preserving != 0},
                      {"completely_positive", cert.completely_positive != 0},
                      {"selfadjoint", cert.selfadjoint != 0},
                      {"minus_one_free", cert.minus_one_free != 0},
                      {"valid", cert.valid != 0}};
  if (!cert.valid) {
    emit(j.dump(2) + "\n", cfg.out);
    return kExitFail;
  }
  rk_mat* xr = nullptr;
  check(rk_mat_random(cfg.n, seed, 0, &xr));
  MatPtr x(xr);
  rk_decomp_options o = decomp_options(cfg);
  DecompGuard g;
  int fixed_dim = 0;
  check(rk_markov_demo(t.get(), p, x.get(), &o, &g.r, &fixed_dim));
  if (cfg.format == "csv") {
    emit(decomp_csv(g.r), cfg.out);
  } else {
    j["fixed_dim"] = fixed_dim;
    j["demo"] = decomp_json(g.r, false);
    emit(j.dump(2) + "\n", cfg.out);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rittkit: square functions and column/row decompositions on matrix algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rk_version()));

  Config cfg;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", cfg.config_path, "JSON run configuration (\"schema\": 1)");
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto seed = [&](CLI::App* sub) { sub->add_option("--seed", cfg.seed, "RNG seed (required)"); };
  auto exponent = [&](CLI::App* sub, const char* def) {
    auto* o = sub->add_option("--p", cfg.p_text, "Schatten exponent, e.g. 4, 4/3 or inf");
    if (def) o->default_val(def);
  };

  CLI::App* growth = app.add_subcommand("growth", "Column/row growth on the diagonal example");
  common(growth);
  exponent(growth, nullptr);
  growth->add_option("--n-list", cfg.n_list, "Matrix sizes")->delimiter(',')->capture_default_str();
  growth->add_option("--n", cfg.n_list, "Alias of --n-list")->delimiter(',');

  CLI::App* decompose = app.add_subcommand("decompose", "Column/row decomposition of a random x");
  common(decompose);
  seed(decompose);
  exponent(decompose, "4/3");
  decompose->add_option("--n", cfg.n, "Matrix size")->default_val(6);
  decompose->add_option("--alpha", cfg.alpha, "Square function exponent alpha")->default_val(1.0);
  decompose->add_option("--tol", cfg.tol, "Truncation tolerance");
  decompose->add_option("--k-max", cfg.k_max, "Number of sequence terms (0 = automatic)");
  decompose->add_option("--splitter", cfg.splitter, "all-column, all-row, rad-optimal or thresholded");
  decompose->add_option("--operator", cfg.op, "left, right or toeplitz");

  CLI::App* check_cmd = app.add_subcommand("check", "Run an invariant suite");
  common(check_cmd);
  seed(check_cmd);
  check_cmd->add_option("suite", cfg.suite, "identities, norms, ritt, stolz, decomp, markov or all");

  CLI::App* sqfun = app.add_subcommand("sqfun", "Evaluate a square function of a random x");
  common(sqfun);
  seed(sqfun);
  exponent(sqfun, nullptr);
  sqfun->add_option("--n", cfg.n, "Matrix size")->default_val(6);
  sqfun->add_option("--alpha", cfg.alpha, "Exponent alpha")->default_val(1.0);
  sqfun->add_option("--kind", cfg.kind, "col, row, rad or split");
  sqfun->add_option("--tol", cfg.tol, "Relative tail tolerance");
  sqfun->add_option("--k-max", cfg.k_max, "Maximal number of terms");
  sqfun->add_option("--rho", cfg.rho, "Damping factor")->default_val(1.0);
  sqfun->add_option("--operator", cfg.op, "left, right or toeplitz");
  sqfun->add_option("--c", cfg.c, "Toeplitz parameter")->default_val(0.9);

  CLI::App* markov = app.add_subcommand("markov", "Generate, validate and decompose for a Toeplitz Schur map");
  common(markov);
  seed(markov);
  exponent(markov, "4/3");
  markov->add_option("--n", cfg.n, "Matrix size")->default_val(4);
  markov->add_option("--c", cfg.c, "Toeplitz parameter")->default_val(0.9);
  markov->add_option("--splitter", cfg.splitter, "Splitter for the demo");
  markov->add_option("--tol", cfg.tol, "Truncation tolerance");
  markov->add_option("--k-max", cfg.k_max, "Number of sequence terms (0 = automatic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    apply_config(name, *sub, cfg);
    if (name == "growth") return cmd_growth(cfg);
    if (name == "decompose") return cmd_decompose(cfg);
    if (name == "check") return cmd_check(cfg);
    if (name == "sqfun") return cmd_sqfun(cfg);
    return cmd_markov(cfg);
  } catch (const UsageError& e) {
    std::cerr << "rittkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RunFailure& e) {
    std::cerr << "rittkit: " << e.what() << "\n";
    return kExitFail;
  } catch (const std::exception& e) {
    std::cerr << "rittkit: " << e.what() << "\n";
    return kExitFail;
  }
}
