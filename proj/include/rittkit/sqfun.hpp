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

// Discrete square functions of Ritt operators with certified truncation.

#include <cstdint>
#include <string>
#include <vector>

#include "rittkit/blocknorm.hpp"
#include "rittkit/superop.hpp"

namespace rittkit {

enum class SqKind { col, row, rad, split };

std::string to_string(SqKind kind);
SqKind sq_kind_from_string(const std::string& name);

struct SqSpec {
  Exponent p{2.0};
  double alpha = 1.0;
  SqKind kind = SqKind::col;
  long k_max = 1000000;
  double tol = 1e-6;
  /// Damping: the sequence is built from rho T.
  double rho = 1.0;
  RadOptions rad;
};

struct SqResult {
  /// Value of the truncated sum (for rad/split, the best upper estimate of
  /// the truncated value).
  double value = 0.0;
  /// Certified bracket for the untruncated quantity.
  double lower = 0.0;
  double upper = 0.0;
  long k_used = 0;
  double tail_bound = 0.0;
  bool converged = false;
};

/// ||S^j||_{S^2 -> S^2} <= b q^floor(j / m) for all j >= 0.
struct PowerBound {
  double b = 1.0;
  double q = 0.0;
  long m = 1;
};

/// Certified power bound for a strict contraction in spectral terms; throws
/// when the spectral radius is >= 1.
PowerBound power_bound(const SuperOp& s);

/// Upper bound for sum_{k > K} k^beta (b q^floor(stride (k-1) / m))^power;
/// infinity when K is too small for the bound to apply.
double tail_series(const PowerBound& pb, double beta, long k, int stride, double power);

/// sum_{k <= K} k z^(k-1), K chosen so the geometric tail bound is at most
/// tol times the partial sum. Requires |z| < 1.
Complex derivative_geometric_sum(Complex z, double tol = 1e-14);
/// sum_{k <= K} k z^(2k-2) (1 - z^2)^2, same truncation rule.
Complex reconstruction_scalar_sum(Complex z, double tol = 1e-14);

/// S^p / S^2 comparison constant for an n x n matrix, max(1, n^(1/p - 1/2)).
double schatten_two_constant(Eigen::Index n, Exponent p);

/// Blocks x_k = k^(alpha - 1/2) (rho T)^(k-1) (I - rho T)^alpha x for
/// k = 1..K, K from the truncation policy.
BlockVec sq_sequence(const SuperOp& t, const Mat& x, const SqSpec& spec);

/// The first k blocks of the sequence, without any truncation policy.
BlockVec sq_sequence_fixed(const SuperOp& t, const Mat& x, const SqSpec& spec, long k);

/// Certified bound on the column (or row) S^p norm of blocks k+1, k+2, ...
double sq_tail_bound(const SuperOp& t, const Mat& x, const SqSpec& spec, long k);

SqResult square_function(const SuperOp& t, const Mat& x, const SqSpec& spec);

struct PrefixRad {
  RadBracket bracket;
  /// Number of leading blocks passed to the rad solver.
  std::size_t prefix = 0;
  /// Column norm of the remaining blocks, which are assigned to the column part.
  double rest_column = 0.0;
  double upper() const { return bracket.upper + rest_column; }
};

/// Rad bracket of a long sequence: the solver only sees the leading blocks
/// that carry all but energy_tol of the squared Frobenius mass (at most cap
/// blocks); the remainder goes to the column part.
PrefixRad rad_prefix_bracket(const BlockVec& seq, Exponent p, const RadOptions& opts, double energy_tol = 1e-8,
                             std::size_t cap = 128);

struct AlphaExperiment {
  std::vector<double> alphas;
  /// ratios[s][i][j] = value(alpha_i) / value(alpha_j) for sample s.
  std::vector<std::vector<std::vector<double>>> ratios;
  /// max over samples and pairs of ratio, and of its inverse.
  double max_spread = 1.0;
};

AlphaExperiment alpha_equivalence_experiment(const SuperOp& t, Exponent p, const std::vector<double>& alphas,
                                             SqKind kind, int samples, std::uint64_t seed, double rho = 1.0);

}  // namespace rittkit
