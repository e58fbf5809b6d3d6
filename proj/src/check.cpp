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

#include "rittkit/check.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include <json.hpp>

#include "rittkit/blocknorm.hpp"
#include "rittkit/decomp.hpp"
#include "rittkit/markov.hpp"
#include "rittkit/ritt.hpp"
#include "rittkit/rng.hpp"
#include "rittkit/sqfun.hpp"
#include "rittkit/stolzexample.hpp"

namespace rittkit {

namespace {

using Items = std::vector<CheckItem>;

// value <= bound passes
void record(Items& out, const std::string& suite, const std::string& name, double value, double bound) {
  out.push_back({suite, name, value <= bound, value, bound});
}

Items identities(std::uint64_t seed) {
  const std::string s = "identities";
  Items out;
  Rng rng(seed, 1);
  double worst_geo = 0.0, worst_rec = 0.0;
  for (int i = 0; i < 100; ++i) {
    Complex z = std::polar(0.9 * rng.uniform(), 2.0 * M_PI * rng.uniform());
    Complex exact = 1.0 / ((1.0 - z) * (1.0 - z));
    worst_geo = std::max(worst_geo, std::abs(derivative_geometric_sum(z) - exact) / std::abs(exact));
    worst_rec = std::max(worst_rec, std::abs(reconstruction_scalar_sum(z) - 1.0));
  }
  record(out, s, "geometric_derivative_series", worst_geo, 1e-8);
  record(out, s, "reconstruction_scalar_series", worst_rec, 1e-10);

  const SuperOp la = make_diag_a(6).left();
  Mat x = rng.gaussian_matrix(6, 6);
  double rec = (reconstruct_identity(la, x, 0.99) - x).norm() / x.norm();
  record(out, s, "reconstruction_operator", rec, 1e-8);

  std::vector<Mat> ub;
  for (int k = 0; k < 20; ++k) ub.push_back(rng.gaussian_matrix(6, 6));
  BlockVec u(std::move(ub));
  Mat y = rng.gaussian_matrix(6, 6);
  Complex lhs = trace_pairing(Z_star_apply(la, u), y);
  Complex rhs = block_pairing(u, Z_apply(la, y, 20));
  record(out, s, "z_adjointness", std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), 1e-9);

  DecompOptions opts;
  opts.splitter = Splitter::all_column;
  Mat xu = x / schatten_norm(x, Exponent(4.0 / 3.0));
  DecompResult d = decompose(la, xu, Exponent(4.0 / 3.0), opts);
  record(out, s, "all_column_split_is_identity", std::max((d.x1 - xu).norm(), d.x2.norm()), 1e-8);
  return out;
}

Items norms(std::uint64_t seed) {
  const std::string s = "norms";
  Items out;
  Rng rng(seed, 2);
  const std::vector<double> ps = {1.0, 4.0 / 3.0, 2.0, 3.0, 4.0, kInf};
  double tri = 0.0, hom = 0.0, uni = 0.0, mono = 0.0, hold = 0.0, colrow = 0.0, stacked = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 5;
    Mat x = rng.gaussian_matrix(n, n), y = rng.gaussian_matrix(n, n);
    Mat u = rng.unitary(n), v = rng.unitary(n);
    Complex c = rng.complex_gaussian();
    double prev = kInf;
    for (double pv : ps) {
      Exponent p(pv);
      double nx = schatten_norm(x, p), ny = schatten_norm(y, p);
      tri = std::max(tri, (schatten_norm(x + y, p) - nx - ny) / (nx + ny));
      hom = std::max(hom, std::abs(schatten_norm(c * x, p) - std::abs(c) * nx) / (std::abs(c) * nx));
      uni = std::max(uni, std::abs(schatten_norm(u * x * v, p) - nx) / nx);
      mono = std::max(mono, (nx - prev) / nx);
      prev = nx;
    }
    // 1/r = 1/p + 1/q
    for (auto [pv, qv] : {std::pair{2.0, 2.0}, {4.0, 4.0 / 3.0}, {3.0, 6.0}, {1.5, kInf}}) {
      Exponent p(pv), q(qv);
      double rinv = 1.0 / pv + (std::isinf(qv) ? 0.0 : 1.0 / qv);
      double lhs = schatten_norm(x * y, Exponent(1.0 / rinv));
      double rhs = schatten_norm(x, p) * schatten_norm(y, q);
      hold = std::max(hold, (lhs - rhs) / rhs);
    }
    std::vector<Mat> blocks;
    for (int k = 0; k < 3; ++k) blocks.push_back(rng.gaussian_matrix(n, n));
    BlockVec b(std::move(blocks));
    double c2 = column_norm(b, Exponent(2.0));
    colrow = std::max(colrow, std::abs(c2 - row_norm(b, Exponent(2.0))) / c2);
    double c4 = column_norm(b, Exponent(4.0 / 3.0));
    stacked = std::max(stacked, std::abs(c4 - schatten_norm(stacked_column(b), Exponent(4.0 / 3.0))) / c4);
  }
  record(out, s, "triangle_inequality", tri, 1e-10);
  record(out, s, "homogeneity", hom, 1e-10);
  record(out, s, "unitary_invariance", uni, 1e-10);
  record(out, s, "monotone_in_p", mono, 1e-10);
  record(out, s, "holder", hold, 1e-10);
  record(out, s, "column_equals_row_at_2", colrow, 1e-10);
  record(out, s, "stacked_column_identity", stacked, 1e-9);

  int failures = 0;
  const Exponent p(4.0 / 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    Rng sub = rng.substream(static_cast<std::uint64_t>(trial));
    const int n = 1 + trial % 4, k = 1 + trial % 3;
    std::vector<Mat> xs, ys;
    for (int j = 0; j < k; ++j) {
      xs.push_back(sub.gaussian_matrix(n, n));
      ys.push_back(sub.gaussian_matrix(n, n));
    }
    if (!duality_check(BlockVec(std::move(xs)), BlockVec(std::move(ys)), p)) ++failures;
  }
  record(out, s, "duality_check_failures", failures, 0.0);
  return out;
}

Items ritt(std::uint64_t seed) {
  const std::string s = "ritt";
  Items out;
  const SuperOp la = make_diag_a(8).left();
  RittReport rep = ritt_constants(la, 10000, Exponent(4.0 / 3.0));
  record(out, s, "power_bound_is_one", std::abs(rep.power_bound - 1.0), 1e-12);
  record(out, s, "diff_bound_is_half", std::abs(rep.diff_bound - 0.5), 1e-12);
  record(out, s, "resolvent_bound_finite", std::isfinite(rep.resolvent_bound) ? 0.0 : 1.0, 0.0);

  Rng rng(seed, 3);
  const StolzDomain d(M_PI / 3);
  int bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Complex a, b;
    do a = Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    while (!d.contains(a));
    do b = Complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
    while (!d.contains(b));
    if (!d.contains(0.5 * (a + b))) ++bad;
  }
  record(out, s, "stolz_convexity_failures", bad, 0.0);

  const std::vector<double> al = {0.25, 0.5, 1.0, 1.5};
  double worst = 0.0;
  for (double a : al)
    for (double b : al) {
      Mat lhs = compose(fractional_power(la, a), fractional_power(la, b)).factor();
      Mat rhs = fractional_power(la, a + b).factor();
      worst = std::max(worst, operator_norm(lhs - rhs));
    }
  record(out, s, "fractional_semigroup", worst, 1e-8);
  return out;
}

Items stolz(std::uint64_t) {
  const std::string s = "stolz";
  Items out;
  double s1 = 0.0, s2 = 0.0, psd = 0.0;
  for (int n = 1; n <= 64; ++n) {
    ANormBounds b = a_norm_bounds(n);
    s1 = std::max(s1, b.s1 - n);
    s2 = std::max(s2, b.s2sq - 160.0 / 3.0 * n);
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_A(n), Eigen::EigenvaluesOnly);
    psd = std::max(psd, -es.eigenvalues().minCoeff());
  }
  record(out, s, "trace_bound", s1, 0.0);
  record(out, s, "hilbert_schmidt_bound", s2, 0.0);
  record(out, s, "A_positive", psd, 1e-12);

  GrowthResult g = growth_experiment(Exponent(4.0), {4, 8, 16, 32, 64});
  double worst = 0.0;
  for (const GrowthRow& r : g.rows) {
    double c = r.col / std::sqrt(static_cast<double>(r.n));
    worst = std::max({worst, 0.5 - c, c - 0.67});
  }
  record(out, s, "column_scale_sqrt_n", worst, 0.0);
  record(out, s, "growth_slope_p4", std::max(0.2 - g.slope, g.slope - 0.35), 0.0);
  GrowthResult g3 = growth_experiment(Exponent(3.0), {4, 8, 16, 32, 64});
  record(out, s, "growth_slope_p3", 1.0 / 6.0 - 0.05 - g3.slope, 0.0);
  GrowthResult gd = growth_experiment(Exponent(4.0 / 3.0), {4, 8, 16, 32, 64});
  record(out, s, "dual_growth_slope", 0.1 - gd.slope, 0.0);
  return out;
}

Items decomp(std::uint64_t seed) {
  const std::string s = "decomp";
  Items out;
  double h64 = hankel_regular_check(64), h128 = hankel_regular_check(128);
  record(out, s, "hankel_stability", std::abs(h128 - h64), 0.01);
  record(out, s, "hankel_bounded", h128, 2.0);

  const SuperOp la = make_diag_a(6).left();
  const Exponent p(4.0 / 3.0);
  Rng rng(seed, 4);
  double res = 0.0, cons = 0.0;
  for (int i = 0; i < 3; ++i) {
    Mat x = rng.gaussian_matrix(6, 6);
    x /= schatten_norm(x, p);
    DecompResult d = decompose(la, x, p);
    res = std::max(res, d.residual);
    cons = std::max(cons, d.constant);
  }
  record(out, s, "rad_optimal_residual", res, 1e-6);
  record(out, s, "rad_optimal_constant", cons, 50.0);
  return out;
}

Items markov(std::uint64_t seed) {
  const std::string s = "markov";
  Items out;
  const int n = 4;
  const double c = 0.9;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::pow(c, std::abs(i - j));
  MarkovMap t = schur_markov(m);
  record(out, s, "toeplitz_certificate", t.certificate.valid() ? 0.0 : 1.0, 0.0);

  CVec ev = eigenvalues(t.op.as_matrix());
  std::vector<double> got, want;
  for (Eigen::Index i = 0; i < ev.size(); ++i) got.push_back(ev(i).real());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) want.push_back(std::pow(c, std::abs(i - j)));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, std::abs(got[i] - want[i]));
  record(out, s, "schur_spectrum", worst, 1e-12);

  Rng rng(seed, 5);
  Mat x = rng.gaussian_matrix(n, n);
  MarkovDemo demo = markov_decomposition_demo(t, Exponent(4.0 / 3.0), x);
  record(out, s, "restricted_decomposition_residual", demo.result.residual, 1e-6);
  return out;
}

const std::map<std::string, std::function<Items(std::uint64_t)>>& registry() {
  static const std::map<std::string, std::function<Items(std::uint64_t)>> suites = {
      {"identities", identities}, {"norms", norms}, {"ritt", ritt},
      {"stolz", stolz},           {"decomp", decomp}, {"markov", markov}};
  return suites;
}

}  // namespace

std::vector<std::string> check_suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  names.push_back("all");
  return names;
}

bool is_check_suite(const std::string& name) { return name == "all" || registry().count(name) > 0; }

std::vector<CheckItem> run_check_suite(const std::string& name, std::uint64_t seed) {
  if (!is_check_suite(name)) fail(ErrorCode::invalid_argument, "unknown check suite '" + name + "'");
  if (name != "all") return registry().at(name)(seed);
  Items all;
  for (const auto& [suite, fn] : registry()) {
    Items part = fn(seed);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

std::string check_report_json(const std::string& suite, const std::vector<CheckItem>& items) {
  nlohmann::json checks = nlohmann::json::array();
  bool passed = true;
  for (const CheckItem& it : items) {
    passed = passed && it.passed;
    checks.push_back({{"suite", it.suite}, {"name", it.name}, {"passed", it.passed}, {"value", it.value},
                      {"bound", it.bound}});
  }
  nlohmann::json doc = {{"schema", 1}, {"suite", suite}, {"passed", passed}, {"checks", checks}};
  return doc.dump(2);
}

}  // namespace rittkit
