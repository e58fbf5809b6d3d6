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

#pragma once

// Column/row decomposition x = x1 + x2 through the operator
// Z y = (k^(1/2) (T*)^(k-1) (I + T*)^2 (I - T*) y)_k.

#include <cstdint>
#include <string>

#include "rittkit/blocknorm.hpp"
#include "rittkit/sqfun.hpp"
#include "rittkit/superop.hpp"

namespace rittkit {

BlockVec Z_apply(const SuperOp& t, const Mat& y, long k);

/// sum_k k^(1/2) T^(k-1) (I + T)^2 (I - T) u_k.
Mat Z_star_apply(const SuperOp& t, const BlockVec& u);

/// sum_{k <= K} k (rho T)^(2k-2) (I - (rho T)^2)^2 x. K = 0 picks K so that
/// the Frobenius distance to x is at most tol ||x||_2.
Mat reconstruct_identity(const SuperOp& t, const Mat& x, double rho, long k = 0, double tol = 1e-12);

enum class Splitter { all_column, all_row, rad_optimal, thresholded };

std::string to_string(Splitter s);
Splitter splitter_from_string(const std::string& name);

struct DecompOptions {
  Splitter splitter = Splitter::rad_optimal;
  /// Number of sequence blocks; 0 picks it from the truncation tolerance.
  long k = 0;
  double tol = 1e-8;
  double alpha = 1.0;
  RadOptions rad = [] {
    RadOptions r;
    r.max_iter = 1000;
    r.compute_lower = false;
    return r;
  }();
};

struct DecompResult {
  Mat x1;
  Mat x2;
  double col_sq = 0.0;  // column square function of x1
  double row_sq = 0.0;  // row square function of x2
  /// (col_sq + row_sq) / ||x||_p
  double constant = 0.0;
  /// ||x - x1 - x2||_p / ||x||_p
  double residual = 0.0;
  long k_used = 0;
};

DecompResult decompose(const SuperOp& t, const Mat& x, Exponent p, const DecompOptions& opts = {});

/// Regular norm of the K x K matrix [sqrt(km) / (k + m - 1)^2].
double hankel_regular_check(int k);

/// Bracket of inf { col-sq(x1) + row-sq(x2) : x = x1 + x2 }: the upper bound
/// refines the constructive split; the lower bound is the rad lower bound.
SqResult split_square_function(const SuperOp& t, const Mat& x, const SqSpec& spec);

}  // namespace rittkit
