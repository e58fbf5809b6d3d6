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

// The diagonal operator a = diag(1 - 2^-k) and the column/row growth
// experiment built on L_a.

#include <vector>

#include "rittkit/superop.hpp"

namespace rittkit {

/// a = diag(1 - 2^-k), k = 1..n. The gaps 2^-k are kept separately since
/// 1 - 2^-k rounds to 1 in double precision once k > 53.
struct DiagA {
  int n = 0;
  std::vector<double> gaps;

  double entry(int k) const { return 1.0 - gaps[k]; }  // zero-based
  Mat matrix() const;
  SuperOp left() const;
  SuperOp right() const;
};

DiagA make_diag_a(int n);

/// (1/sqrt(n)) e e^T with e the all-ones vector.
Mat rank_one_test(int n);

/// A_ij = 2^(i+j) / (2^i + 2^j - 1)^2, evaluated from the gaps.
Mat matrix_A(int n);
/// The same entries as (1 - a_i)(1 - a_j)(1 - a_i a_j)^-2. Cancellation makes
/// this inaccurate for large n, and it is NaN once 1 - 2^-n rounds to 1.
Mat matrix_A_from_entries(int n);

struct ANormBounds {
  double s1 = 0.0;    // ||A||_{S^1}
  double s2sq = 0.0;  // ||A||_{S^2}^2
};

ANormBounds a_norm_bounds(int n);

struct GrowthRow {
  int n = 0;
  double col = 0.0;
  double row = 0.0;
  double ratio = 0.0;
};

struct GrowthResult {
  std::vector<GrowthRow> rows;
  double slope = 0.0;
  double intercept = 0.0;
  /// Root mean square of the fit residuals.
  double residual = 0.0;
  double theta = 0.0;
  double expected_slope = 0.0;
};

/// col = ||(I + a)^-1 x||_p and row = ||A||_{p/2}^{1/2} for the rank-one test
/// vector; ratio is col/row for p > 2 and row/col for p < 2.
/// Rows are computed on up to `threads` workers and returned in input order.
GrowthResult growth_experiment(Exponent p, const std::vector<int>& n_list, int threads = 1);

}  // namespace rittkit
