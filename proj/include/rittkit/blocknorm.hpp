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

// Norms on finite sequences of matrices: the truncated column, row and
// rad spaces L^p(M_n, l^2_c), L^p(M_n, l^2_r), L^p(M_n, l^2_rad).

#include <cstdint>
#include <optional>
#include <vector>

#include "rittkit/matcore.hpp"

namespace rittkit {

class SuperOp;

/// Finite sequence (x_1, ..., x_K) of n x n matrices.
class BlockVec {
 public:
  BlockVec() = default;
  explicit BlockVec(std::vector<Mat> blocks);
  static BlockVec zeros(std::size_t count, Eigen::Index n);

  std::size_t size() const noexcept { return blocks_.size(); }
  bool empty() const noexcept { return blocks_.empty(); }
  Eigen::Index dim() const noexcept { return blocks_.empty() ? 0 : blocks_.front().rows(); }

  const Mat& operator[](std::size_t k) const { return blocks_[k]; }
  Mat& operator[](std::size_t k) { return blocks_[k]; }
  const std::vector<Mat>& blocks() const noexcept { return blocks_; }

  void push_back(Mat block);
  void resize(std::size_t count);  // pads with zero blocks

  BlockVec& operator+=(const BlockVec& other);
  BlockVec& operator-=(const BlockVec& other);
  BlockVec& operator*=(Complex s);
  friend BlockVec operator+(BlockVec a, const BlockVec& b) { return a += b; }
  friend BlockVec operator-(BlockVec a, const BlockVec& b) { return a -= b; }
  friend BlockVec operator*(Complex s, BlockVec a) { return a *= s; }

  /// Blockwise adjoint (x_k^*).
  BlockVec adjoint() const;
  /// Real Frobenius inner product Re sum Tr(x_k^* y_k).
  double real_dot(const BlockVec& other) const;
  double frobenius_norm() const;

 private:
  std::vector<Mat> blocks_;
};

/// sum_k x_k^* x_k
Mat column_gram(const BlockVec& x);
/// sum_k x_k x_k^*
Mat row_gram(const BlockVec& x);

/// || (sum |x_k|^2)^(1/2) ||_p
double column_norm(const BlockVec& x, Exponent p);
/// || (sum |x_k^*|^2)^(1/2) ||_p
double row_norm(const BlockVec& x, Exponent p);

/// (Tr (S + eps^2)^(p/2))^(1/p) for the column Gram S, and optionally its
/// Frobenius gradient u_k (S + eps^2)^(p/2 - 1) (Tr ...)^(1/p - 1).
double smoothed_column_norm(const BlockVec& u, double p, double eps, BlockVec* grad = nullptr);
double smoothed_row_norm(const BlockVec& v, double p, double eps, BlockVec* grad = nullptr);

/// The Kn x Kn matrix sum_k e_{k1} (x) x_k whose S^p norm is the column norm.
Mat stacked_column(const BlockVec& x);
/// The Kn x Kn matrix sum_k e_{1k} (x) x_k whose S^p norm is the row norm.
Mat stacked_row(const BlockVec& x);

/// Sum_k Tr(x_k y_k).
Complex block_pairing(const BlockVec& x, const BlockVec& y);

/// Norming functional of the column norm for the bilinear pairing: y with
/// row_norm(y, p*) = 1 and block_pairing(x, y) = column_norm(x, p).
BlockVec column_norming(const BlockVec& x, Exponent p);
/// Norming functional of the row norm: column_norm(y, p*) = 1.
BlockVec row_norming(const BlockVec& x, Exponent p);

struct RadOptions {
  double tol = 1e-3;        // relative gap (upper - lower) / upper
  int max_iter = 5000;
  int dual_starts = 64;
  int dual_steps = 20;
  std::uint64_t seed = 0x5eed;
  bool compute_lower = true;
};

struct RadBracket {
  double lower = 0.0;
  double upper = 0.0;
  /// Row part v of the best decomposition x = (x - v) + v, for p < 2.
  std::optional<BlockVec> witness;
  bool converged = false;
  int iterations = 0;

  double gap() const { return upper > 0 ? (upper - lower) / upper : 0.0; }
};

/// Rad norm: max(column, row) for p >= 2 (exact), and for p < 2 a certified
/// bracket of inf { col(u) + row(v) : u + v = x }.
RadBracket rad_norm_bracket(const BlockVec& x, Exponent p, const RadOptions& opts = {});

/// Dual lower bound |<x, y>| / max(col_{p*}(y), row_{p*}(y)) for one y.
double rad_dual_ratio(const BlockVec& x, const BlockVec& y, Exponent p);

/// |sum Tr(x_k y_k)| <= column_norm(x, p) row_norm(y, p*) + slack.
bool duality_check(const BlockVec& x, const BlockVec& y, Exponent p, double slack = 1e-9);

/// Operator norm of the entrywise absolute value of c.
double regular_norm(const Eigen::MatrixXcd& c);

/// y_i = sum_j c_ij T_ij(x_j).
BlockVec op_matrix_apply(const Eigen::MatrixXcd& c, const std::vector<std::vector<SuperOp>>& table,
                         const BlockVec& x);

}  // namespace rittkit
