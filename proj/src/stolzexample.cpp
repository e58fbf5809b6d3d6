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

#include "rittkit/stolzexample.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <set>
#include <thread>

namespace rittkit {

Mat DiagA::matrix() const {
  Mat a = Mat::Zero(n, n);
  for (int k = 0; k < n; ++k) a(k, k) = entry(k);
  return a;
}

SuperOp DiagA::left() const { return SuperOp::left_mult(matrix()); }

SuperOp DiagA::right() const { return SuperOp::right_mult(matrix()); }

DiagA make_diag_a(int n) {
  require(n >= 1, ErrorCode::invalid_argument, "make_diag_a: n must be >= 1");
  DiagA a;
  a.n = n;
  for (int k = 1; k <= n; ++k) a.gaps.push_back(std::ldexp(1.0, -k));
  return a;
}

Mat rank_one_test(int n) {
  require(n >= 1, ErrorCode::invalid_argument, "rank_one_test: n must be >= 1");
  return Mat::Constant(n, n, 1.0 / std::sqrt(static_cast<double>(n)));
}

Mat matrix_A(int n) {
  const DiagA a = make_diag_a(n);
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double gi = a.gaps[i], gj = a.gaps[j];
      double den = gi + gj - gi * gj;
      out(i, j) = gi * gj / (den * den);
    }
  return out;
}

Mat matrix_A_from_entries(int n) {
  const DiagA a = make_diag_a(n);
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double ai = a.entry(i), aj = a.entry(j);
      double den = 1.0 - ai * aj;
      out(i, j) = (1.0 - ai) * (1.0 - aj) / (den * den);
    }
  return out;
}

ANormBounds a_norm_bounds(int n) {
  Mat a = matrix_A(n);
  return {schatten_norm(a, Exponent(1.0)), a.squaredNorm()};
}

GrowthResult growth_experiment(Exponent p, const std::vector<int>& n_list, int threads) {
  require(!p.is_infinite() && p.value() > 1.0 && p.value() != 2.0, ErrorCode::invalid_argument,
          "growth_experiment: p must lie in (1, inf) and differ from 2");
  require(!n_list.empty(), ErrorCode::invalid_argument, "growth_experiment: empty n list");
  std::set<int> distinct(n_list.begin(), n_list.end());
  require(distinct.size() >= 2, ErrorCode::invalid_argument, "growth_experiment: need at least two distinct n");

  for (int n : n_list) require(n >= 1, ErrorCode::invalid_argument, "growth_experiment: n must be >= 1");

  GrowthResult out;
  out.rows.resize(n_list.size());
  const Exponent half(p.value() / 2.0);
  auto one = [&](std::size_t i) {
    const int n = n_list[i];
    const DiagA a = make_diag_a(n);
    Mat x = rank_one_test(n);
    for (int k = 0; k < n; ++k) x.row(k) /= 2.0 - a.gaps[k];  // (I + a)^{-1} x
    GrowthRow& row = out.rows[i];
    row.n = n;
    row.col = schatten_norm(x, p);
    row.row = std::sqrt(schatten_norm(matrix_A(n), half));
    row.ratio = p.value() > 2.0 ? row.col / row.row : row.row / row.col;
  };
  // each worker owns the indices i = w mod workers, so rows land in input order
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, n_list.size());
  if (workers == 1) {
    for (std::size_t i = 0; i < n_list.size(); ++i) one(i);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < n_list.size(); i += workers) one(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  // ordinary least squares of log(ratio) on log(n)
  const double m = static_cast<double>(out.rows.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const GrowthRow& r : out.rows) {
    double lx = std::log(static_cast<double>(r.n)), ly = std::log(r.ratio);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  out.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  out.intercept = (sy - out.slope * sx) / m;
  double ss = 0;
  for (const GrowthRow& r : out.rows) {
    double e = std::log(r.ratio) - (out.intercept + out.slope * std::log(static_cast<double>(r.n)));
    ss += e * e;
  }
  out.residual = std::sqrt(ss / m);

  const double p_eff = p.value() > 2.0 ? p.value() : p.conjugate().value();
  out.theta = std::min(1.0, 2.0 - 4.0 / p_eff);
  out.expected_slope = out.theta / 4.0;
  return out;
}

}  // namespace rittkit
