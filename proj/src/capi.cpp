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

#include "rittkit/rittkit.h"

#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "rittkit/check.hpp"
#include "rittkit/decomp.hpp"
#include "rittkit/markov.hpp"
#include "rittkit/ritt.hpp"
#include "rittkit/rng.hpp"
#include "rittkit/sqfun.hpp"
#include "rittkit/stolzexample.hpp"

struct rk_mat {
  rittkit::Mat m;
};

struct rk_superop {
  rittkit::SuperOp op;
};

namespace {

using rittkit::Error;
using rittkit::ErrorCode;
using rittkit::Exponent;
using rittkit::Mat;

thread_local std::string last_error;

rk_status set_error(rk_status s, const char* what) {
  last_error = what;
  return s;
}

// Runs f and converts exceptions to status codes.
template <class F>
rk_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return RK_OK;
  } catch (const Error& e) {
    return set_error(static_cast<rk_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(RK_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(RK_INTERNAL, e.what());
  } catch (...) {
    return set_error(RK_INTERNAL, "unknown exception");
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) rittkit::fail(ErrorCode::invalid_argument, std::string(what) + " is NULL");
}

rittkit::DecompOptions to_options(const rk_decomp_options* o) {
  rittkit::DecompOptions opts;
  if (o == nullptr) return opts;
  if (o->splitter < RK_SPLIT_ALL_COLUMN || o->splitter > RK_SPLIT_THRESHOLDED)
    rittkit::fail(ErrorCode::invalid_argument, "unknown splitter code");
  opts.splitter = static_cast<rittkit::Splitter>(o->splitter);
  opts.k = o->k;
  opts.tol = o->tol;
  opts.alpha = o->alpha;
  return opts;
}

void fill_result(const rittkit::DecompResult& r, rk_decomp_result* out) {
  out->x1 = new rk_mat{r.x1};
  out->x2 = new rk_mat{r.x2};
  out->col_sq = r.col_sq;
  out->row_sq = r.row_sq;
  out->constant = r.constant;
  out->residual = r.residual;
  out->k_used = r.k_used;
}

}  // namespace

extern "C" {

const char* rk_last_error_message(void) { return last_error.c_str(); }

const char* rk_version(void) { return "0.1.0"; }

rk_status rk_mat_create(int n, const double* re, const double* im, rk_mat** out) {
  return guarded([&] {
    need(re, "re");
    need(out, "out");
    rittkit::require(n >= 1, ErrorCode::invalid_argument, "matrix dimension must be >= 1");
    Mat m(n, n);
    for (int k = 0; k < n * n; ++k) m(k % n, k / n) = {re[k], im ? im[k] : 0.0};
    rittkit::check_mat(m, "rk_mat_create");
    *out = new rk_mat{std::move(m)};
  });
}

rk_status rk_mat_random(int n, uint64_t seed, uint64_t index, rk_mat** out) {
  return guarded([&] {
    need(out, "out");
    rittkit::require(n >= 1, ErrorCode::invalid_argument, "matrix dimension must be >= 1");
    rittkit::Rng rng(seed, index);
    *out = new rk_mat{rng.gaussian_matrix(n, n)};
  });
}

void rk_mat_destroy(rk_mat* m) { delete m; }

int rk_mat_dim(const rk_mat* m) { return m ? static_cast<int>(m->m.rows()) : 0; }

rk_status rk_mat_get(const rk_mat* m, double* re, double* im) {
  return guarded([&] {
    need(m, "matrix");
    need(re, "re");
    const Eigen::Index n = m->m.rows();
    for (Eigen::Index k = 0; k < n * n; ++k) {
      re[k] = m->m(k % n, k / n).real();
      if (im) im[k] = m->m(k % n, k / n).imag();
    }
  });
}

rk_status rk_schatten_norm(const rk_mat* m, double p, double* out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = rittkit::schatten_norm(m->m, Exponent(p));
  });
}

rk_status rk_superop_left(const rk_mat* a, rk_superop** out) {
  return guarded([&] {
    need(a, "matrix");
    need(out, "out");
    *out = new rk_superop{rittkit::SuperOp::left_mult(a->m)};
  });
}

rk_status rk_superop_right(const rk_mat* a, rk_superop** out) {
  return guarded([&] {
    need(a, "matrix");
    need(out, "out");
    *out = new rk_superop{rittkit::SuperOp::right_mult(a->m)};
  });
}

rk_status rk_superop_schur(const rk_mat* m, rk_superop** out) {
  return guarded([&] {
    need(m, "matrix");
    need(out, "out");
    *out = new rk_superop{rittkit::SuperOp::schur(m->m)};
  });
}

rk_status rk_superop_diag_a(int n, int right, rk_superop** out) {
  return guarded([&] {
    need(out, "out");
    rittkit::require(n >= 1 && n <= 1000, ErrorCode::invalid_argument, "n must lie in [1, 1000]");
    const rittkit::DiagA a = rittkit::make_diag_a(n);
    *out = new rk_superop{right ? a.right() : a.left()};
  });
}

rk_status rk_superop_apply(const rk_superop* t, const rk_mat* x, rk_mat** out) {
  return guarded([&] {
    need(t, "operator");
    need(x, "matrix");
    need(out, "out");
    *out = new rk_mat{t->op.apply(x->m)};
  });
}

int rk_superop_dim(const rk_superop* t) { return t ? static_cast<int>(t->op.dim()) : 0; }

rk_status rk_superop_spectrum(const rk_superop* t, double* re, double* im) {
  return guarded([&] {
    need(t, "operator");
    need(re, "re");
    need(im, "im");
    rittkit::CVec ev = rittkit::spectrum(t->op);
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      re[i] = ev(i).real();
      im[i] = ev(i).imag();
    }
  });
}

void rk_superop_destroy(rk_superop* t) { delete t; }

rk_sq_spec rk_sq_default_spec(void) {
  rittkit::SqSpec s;
  return {s.p.value(), s.alpha, static_cast<int>(s.kind), s.k_max, s.tol, s.rho};
}

rk_status rk_sq_kind_parse(const char* name, int* kind) {
  return guarded([&] {
    need(name, "name");
    need(kind, "kind");
    *kind = static_cast<int>(rittkit::sq_kind_from_string(name));
  });
}

rk_status rk_square_function(const rk_superop* t, const rk_mat* x, const rk_sq_spec* spec, rk_sq_result* out) {
  return guarded([&] {
    need(t, "operator");
    need(x, "matrix");
    need(spec, "spec");
    need(out, "out");
    rittkit::require(spec->kind >= RK_SQ_COL && spec->kind <= RK_SQ_SPLIT, ErrorCode::invalid_argument,
                     "unknown square function kind");
    rittkit::SqSpec s;
    s.p = Exponent(spec->p);
    s.alpha = spec->alpha;
    s.kind = static_cast<rittkit::SqKind>(spec->kind);
    s.k_max = spec->k_max;
    s.tol = spec->tol;
    s.rho = spec->rho;
    rittkit::SqResult r = rittkit::square_function(t->op, x->m, s);
    *out = {r.value, r.lower, r.upper, r.tail_bound, r.k_used, r.converged ? 1 : 0};
  });
}

rk_status rk_growth(double p, const int* n_list, size_t count, int threads, rk_growth_row* rows,
                    rk_growth_summary* summary) {
  return guarded([&] {
    rittkit::require(count == 0 || n_list != nullptr, ErrorCode::invalid_argument, "n_list is NULL");
    need(rows, "rows");
    need(summary, "summary");
    std::vector<int> ns(n_list, n_list + count);
    rittkit::GrowthResult g = rittkit::growth_experiment(Exponent(p), ns, threads);
    for (std::size_t i = 0; i < g.rows.size(); ++i)
      rows[i] = {g.rows[i].n, g.rows[i].col, g.rows[i].row, g.rows[i].ratio};
    *summary = {g.slope, g.intercept, g.residual, g.theta, g.expected_slope};
  });
}

rk_decomp_options rk_decomp_default_options(void) {
  rittkit::DecompOptions o;
  return {static_cast<int>(o.splitter), o.k, o.tol, o.alpha};
}

rk_status rk_splitter_parse(const char* name, int* splitter) {
  return guarded([&] {
    need(name, "name");
    need(splitter, "splitter");
    *splitter = static_cast<int>(rittkit::splitter_from_string(name));
  });
}

rk_status rk_decompose(const rk_superop* t, const rk_mat* x, double p, const rk_decomp_options* opts,
                       rk_decomp_result* out) {
  return guarded([&] {
    need(t, "operator");
    need(x, "matrix");
    need(out, "out");
    fill_result(rittkit::decompose(t->op, x->m, Exponent(p), to_options(opts)), out);
  });
}

void rk_decomp_result_free(rk_decomp_result* r) {
  if (r == nullptr) return;
  delete r->x1;
  delete r->x2;
  r->x1 = nullptr;
  r->x2 = nullptr;
}

rk_status rk_markov_toeplitz(int n, double c, rk_superop** out) {
  return guarded([&] {
    need(out, "out");
    rittkit::require(n >= 1, ErrorCode::invalid_argument, "n must be >= 1");
    rittkit::require(c >= 0.0 && c <= 1.0, ErrorCode::invalid_argument, "c must lie in [0, 1]");
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = std::pow(c, std::abs(i - j));
    *out = new rk_superop{rittkit::schur_markov(m).op};
  });
}

rk_status rk_markov_validate(const rk_superop* t, rk_markov_certificate* out) {
  return guarded([&] {
    need(t, "operator");
    need(out, "out");
    rittkit::MarkovCertificate c = rittkit::validate_markov(t->op);
    *out = {c.unital, c.trace_preserving, c.cp, c.selfadjoint, c.minus_one_free, c.valid()};
  });
}

rk_status rk_markov_demo(const rk_superop* t, double p, const rk_mat* x, const rk_decomp_options* opts,
                         rk_decomp_result* out, int* fixed_dim) {
  return guarded([&] {
    need(t, "operator");
    need(x, "matrix");
    need(out, "out");
    rittkit::MarkovMap map{t->op, rittkit::validate_markov(t->op)};
    rittkit::MarkovDemo d = rittkit::markov_decomposition_demo(map, Exponent(p), x->m, to_options(opts));
    fill_result(d.result, out);
    if (fixed_dim) *fixed_dim = static_cast<int>(d.fixed_dim);
  });
}

rk_status rk_ritt_constants(const rk_superop* t, int n_max, double p, rk_ritt_report* out) {
  return guarded([&] {
    need(t, "operator");
    need(out, "out");
    rittkit::RittReport r = rittkit::ritt_constants(t->op, n_max, Exponent(p));
    *out = {r.power_bound,     r.power_lower,     r.diff_bound,      r.diff_lower, r.diff_argmax,
            r.resolvent_bound, r.resolvent_lower, r.spectral_radius, r.exact ? 1 : 0};
  });
}

rk_status rk_hankel_regular(int k, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = rittkit::hankel_regular_check(k);
  });
}

rk_status rk_check_suite(const char* name, uint64_t seed, char** json, int* passed) {
  return guarded([&] {
    need(name, "name");
    need(json, "json");
    std::vector<rittkit::CheckItem> items = rittkit::run_check_suite(name, seed);
    bool ok = true;
    for (const auto& it : items) ok = ok && it.passed;
    std::string doc = rittkit::check_report_json(name, items);
    char* buf = new char[doc.size() + 1];
    std::memcpy(buf, doc.c_str(), doc.size() + 1);
    *json = buf;
    if (passed) *passed = ok ? 1 : 0;
  });
}

void rk_string_free(char* s) { delete[] s; }

}  // extern "C"
