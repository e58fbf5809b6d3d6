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


// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "rittkit/blocknorm.hpp"
#include "rittkit/check.hpp"
#include "rittkit/decomp.hpp"
#include "rittkit/markov.hpp"
#include "rittkit/ritt.hpp"
#include "rittkit/rng.hpp"
#include "rittkit/sqfun.hpp"
#include "rittkit/stolzexample.hpp"

using namespace rittkit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double seconds;  // runtime limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double poly_sup_on(const DiagA& a, const Polynomial& phi) {
  double m = 0;
  for (int k = 0; k < a.n; ++k) m = std::max(m, std::abs(eval_polynomial(phi, a.entry(k))));
  return m;
}

Outcome scalar_identities() {
  Rng rng(1001);
  double geo = 0, rec = 0;
  for (int i = 0; i < 100; ++i) {
    Complex z = std::polar(0.9 * std::sqrt(rng.uniform()), 2 * M_PI * rng.uniform());
    Complex want = 1.0 / ((1.0 - z) * (1.0 - z));
    geo = std::max(geo, std::abs(derivative_geometric_sum(z) - want) / std::abs(want));
    rec = std::max(rec, std::abs(reconstruction_scalar_sum(z) - 1.0));
  }
  // the edge of the disc is the hardest case
  for (Complex z : {Complex(0.9, 0), Complex(-0.9, 0), Complex(0, 0.9)}) {
    Complex want = 1.0 / ((1.0 - z) * (1.0 - z));
    geo = std::max(geo, std::abs(derivative_geometric_sum(z) - want) / std::abs(want));
    rec = std::max(rec, std::abs(reconstruction_scalar_sum(z) - 1.0));
  }
  return {geo <= 1e-8 && rec <= 1e-10, fmt("max rel err %.2e, reconstruction err %.2e", geo, rec)};
}

Outcome closed_form_oracle() {
  const DiagA a = make_diag_a(8);
  const double rho = 0.99;
  double worst = 0;
  Rng rng(1002);
  for (double pv : {4.0 / 3.0, 4.0}) {
    for (int s = 0; s < 20; ++s) {
      Mat x = rng.gaussian_matrix(8, 8);
      Mat y = x;
      for (int k = 0; k < 8; ++k) y.row(k) /= 1.0 + rho * a.entry(k);
      const double want = schatten_norm(y, Exponent(pv));
      SqSpec spec;
      spec.p = Exponent(pv);
      spec.rho = rho;
      spec.tol = 1e-9;
      SqResult r = square_function(a.left(), x, spec);
      if (!r.converged) return {false, "truncation did not converge"};
      worst = std::max(worst, std::abs(r.value - want) / want);
    }
  }
  return {worst <= 1e-6, fmt("max rel err %.2e over 40 cases", worst)};
}

Outcome matrix_a_bounds() {
  double s1 = -kInf, s2 = -kInf, neg = 0;
  for (int n = 1; n <= 64; ++n) {
    ANormBounds b = a_norm_bounds(n);
    s1 = std::max(s1, b.s1 / n);
    s2 = std::max(s2, b.s2sq / (160.0 / 3.0 * n));
    Eigen::SelfAdjointEigenSolver<Mat> es(matrix_A(n), Eigen::EigenvaluesOnly);
    neg = std::min(neg, es.eigenvalues().minCoeff());
  }
  return {s1 <= 1.0 && s2 <= 1.0 && neg >= -1e-12,
          fmt("max S1/n %.4f, max S2^2/(160n/3) %.4f, min eigenvalue %.2e", s1, s2, neg)};
}

Outcome growth() {
  GrowthResult g4 = growth_experiment(Exponent(4.0), {4, 8, 16, 32, 64});
  bool ok = true;
  double lo = kInf, hi = 0;
  for (const GrowthRow& r : g4.rows) {
    double c = r.col / std::sqrt(static_cast<double>(r.n));
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  ok = lo >= 0.5 && hi <= 0.67 && g4.slope >= 0.2 && g4.slope <= 0.35;
  GrowthResult g3 = growth_experiment(Exponent(3.0), {4, 8, 16, 32, 64});
  ok = ok && g3.slope >= 1.0 / 6.0 - 0.05;
  Outcome o{ok, fmt("col/sqrt(n) in [%.4f, %.4f], slope p=4 %.4f", lo, hi, g4.slope)};
  o.detail += fmt(", slope p=3 %.4f", g3.slope);
  return o;
}

Outcome dual_regime() {
  GrowthResult g = growth_experiment(Exponent(4.0 / 3.0), {4, 8, 16, 32, 64});
  return {g.slope > 0.1, fmt("row/col slope %.4f", g.slope)};
}

Outcome decomposition() {
  const SuperOp t = make_diag_a(6).left();
  const Exponent p(4.0 / 3.0);
  double res = 0, cmax = 0, drift = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Rng rng(seed, 6);
    Mat x = rng.gaussian_matrix(6, 6);
    DecompResult d = decompose(t, x, p);
    DecompOptions twice;
    twice.k = 2 * d.k_used;
    DecompResult d2 = decompose(t, x, p, twice);
    if (!std::isfinite(d.constant) || !std::isfinite(d2.constant)) return {false, "non-finite constant"};
    res = std::max({res, d.residual, d2.residual});
    cmax = std::max({cmax, d.constant, d2.constant});
    drift = std::max(drift, std::abs(d2.constant - d.constant) / d.constant);
  }
  return {res <= 1e-6 && cmax <= 50 && drift <= 0.1,
          fmt("max residual %.2e, max constant %.4f, max drift under 2K %.2e", res, cmax, drift)};
}

Outcome reconstruction() {
  const Exponent p(4.0 / 3.0);
  double worst = 0;
  DecompOptions o;
  o.splitter = Splitter::all_column;
  for (int n : {4, 6, 8}) {
    const SuperOp t = make_diag_a(n).left();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      Mat x = Rng(seed, 7).gaussian_matrix(n, n);
      DecompResult d = decompose(t, x, p, o);
      double nx = schatten_norm(x, p);
      worst = std::max({worst, schatten_norm(d.x1 - x, p) / nx, schatten_norm(d.x2, p) / nx});
    }
  }
  return {worst <= 1e-8, fmt("max relative deviation from (x, 0) %.2e", worst)};
}

Outcome ritt_constants_exact() {
  const DiagA a = make_diag_a(8);
  const int n_max = 10000;
  // brute force over the eigenvalues: ||L_a^k|| = max_i a_i^k
  double power = 1.0, diff = 0.0;
  for (int k = 1; k <= n_max; ++k)
    for (int i = 0; i < 8; ++i) {
      double ak = std::pow(a.entry(i), k), akm = std::pow(a.entry(i), k - 1);
      power = std::max(power, ak);
      diff = std::max(diff, k * std::abs(ak - akm));
    }
  RittReport r = ritt_constants(a.left(), n_max, Exponent(4.0 / 3.0));
  double e1 = std::abs(r.power_bound - power), e2 = std::abs(r.diff_bound - diff);
  return {e1 <= 1e-12 && e2 <= 1e-12 && std::abs(power - 1) <= 1e-12 && std::abs(diff - 0.5) <= 1e-12,
          fmt("power bound %.15g, diff bound %.15g, max err %.1e", r.power_bound, r.diff_bound, std::max(e1, e2))};
}

Outcome property_suites() {
  auto items = run_check_suite("norms", 1009);
  int failed = 0;
  std::string first;
  for (const auto& it : items)
    if (!it.passed) {
      if (failed++ == 0) first = it.name;
    }
  Outcome o{failed == 0, fmt("%.0f checks, %.0f failed", static_cast<double>(items.size()), failed)};
  if (failed) o.detail += " (first: " + first + ")";
  return o;
}

Outcome functional_calculus() {
  const DiagA a = make_diag_a(8);
  const SuperOp t = a.left();
  const StolzDomain d(M_PI / 4);
  const Exponent p(4.0 / 3.0);
  Rng rng(1010);
  double min_margin = kInf;
  std::vector<Polynomial> polys;
  for (int i = 0; i < 50; ++i) {
    const int degree = static_cast<int>(rng.next() % 9);
    Polynomial phi;
    for (int k = 0; k <= degree; ++k) phi.push_back(rng.complex_gaussian());
    polys.push_back(phi);
    QuadratureResult q = fc_upper_bound(t, d, phi, p);
    // ||phi(L_a)|| on S^p is the sup of |phi| over the entries of a
    double exact = poly_sup_on(a, phi);
    min_margin = std::min(min_margin, (q.bound - exact) / exact);
  }
  double lower = fc_lower_bound(t, d, 8, 20, p, 1011);
  double cb_excess = -kInf;
  for (int m : {1, 2, 4})
    for (int i = 0; i < 5; ++i) {
      const Polynomial& phi = polys[static_cast<std::size_t>(i)];
      double cb = cb_lower_bound(t, m, p, phi, 2, 1012 + static_cast<std::uint64_t>(i));
      cb_excess = std::max(cb_excess, cb - poly_sup_on(a, phi));
    }
  Outcome o{min_margin >= 0 && lower <= 1 + 1e-6 && cb_excess <= 1e-8,
            fmt("min upper margin %.2e, fc lower %.10f, max cb excess %.2e", min_margin, lower, cb_excess)};
  return o;
}

Outcome markov_pipeline() {
  const int n = 4;
  const double c = 0.9;
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::pow(c, std::abs(i - j));
  MarkovMap t = schur_markov(m);
  CVec ev = spectrum(t.op);
  std::vector<double> got, want;
  double imag = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    got.push_back(ev(i).real());
    imag = std::max(imag, std::abs(ev(i).imag()));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) want.push_back(std::pow(c, std::abs(i - j)));
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  double spec_err = imag;
  for (std::size_t i = 0; i < got.size(); ++i) spec_err = std::max(spec_err, std::abs(got[i] - want[i]));
  double res = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Mat x = Rng(seed, 11).gaussian_matrix(n, n);
    MarkovDemo demo = markov_decomposition_demo(t, Exponent(4.0 / 3.0), x);
    res = std::max(res, demo.result.residual);
  }
  return {t.certificate.valid() && spec_err <= 1e-10 && res <= 1e-6,
          fmt("certificate valid %.0f, spectrum err %.2e, max residual %.2e", t.certificate.valid() ? 1.0 : 0.0, spec_err, res)};
}

Outcome hankel() {
  double h64 = hankel_regular_check(64), h128 = hankel_regular_check(128);
  return {std::abs(h128 - h64) <= 0.01 && h64 <= 2.0 && h128 <= 2.0,
          fmt("K=64 %.6f, K=128 %.6f", h64, h128)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "scalar identity series", 1, scalar_identities},
      {2, "column square function closed form", 30, closed_form_oracle},
      {3, "matrix A trace and Hilbert-Schmidt bounds", 5, matrix_a_bounds},
      {4, "column/row growth at p = 4 and p = 3", 10, growth},
      {5, "dual regime at p = 4/3", 10, dual_regime},
      {6, "column/row decomposition", 60, decomposition},
      {7, "reconstruction with the all-column splitter", 10, reconstruction},
      {8, "Ritt constants of L_a", 5, ritt_constants_exact},
      {9, "norm and duality properties", 30, property_suites},
      {10, "functional calculus bounds", 60, functional_calculus},
      {11, "Markov pipeline", 30, markov_pipeline},
      {12, "Hankel regular norm", 5, hankel},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = o.ok && secs < c.seconds;
    if (!ok) ++failed;
    std::printf("%s %2d %-45s %s [%.2f s, limit %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                secs, c.seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
