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

#include <string>
#include <variant>
#include <vector>

#include "rittkit/matcore.hpp"

namespace rittkit {

/// Linear map on M_n. Structured kinds (left/right multiplication, Schur
/// multipliers, unitary mixtures) are kept symbolic so that powers and
/// polynomials stay cheap; anything else falls back to the n^2 x n^2 matrix
/// acting on column-major vec(x).
class SuperOp {
 public:
  enum class Kind { left_mult, right_mult, schur, unitary_mixture, explicit_matrix };

  static SuperOp identity(Eigen::Index n);
  /// x -> a x
  static SuperOp left_mult(Mat a);
  /// x -> x a
  static SuperOp right_mult(Mat a);
  /// x -> m o x (entrywise)
  static SuperOp schur(Mat m);
  /// x -> sum_i w_i u_i x u_i^*
  static SuperOp unitary_mixture(std::vector<double> weights, std::vector<Mat> unitaries);
  /// m is n^2 x n^2 acting on column-major vec(x).
  static SuperOp from_matrix(Mat m);

  Kind kind() const;
  std::string kind_name() const;
  Eigen::Index dim() const noexcept { return n_; }

  Mat apply(const Mat& x) const;
  Mat operator()(const Mat& x) const { return apply(x); }

  /// Trace-duality adjoint: Tr(T(x) y) = Tr(x T*(y)).
  SuperOp adjoint() const;
  /// Adjoint for the Frobenius inner product Tr(x^* y).
  Mat hilbert_adjoint_apply(const Mat& y) const;

  Mat as_matrix() const;

  /// The matrix a (multiplications) or m (Schur multiplier).
  const Mat& factor() const;
  const std::vector<double>& mixture_weights() const;
  const std::vector<Mat>& mixture_unitaries() const;

  bool is_multiplication() const {
    return kind() == Kind::left_mult || kind() == Kind::right_mult;
  }

 private:
  struct LeftMult { Mat a; };
  struct RightMult { Mat a; };
  struct Schur { Mat m; };
  struct Mixture { std::vector<double> w; std::vector<Mat> u; };
  struct Explicit { Mat m; };
  using Rep = std::variant<LeftMult, RightMult, Schur, Mixture, Explicit>;

  SuperOp(Eigen::Index n, Rep rep) : n_(n), rep_(std::move(rep)) {}

  Eigen::Index n_ = 0;
  Rep rep_;
};

Mat kron(const Mat& a, const Mat& b);
Eigen::VectorXcd vec(const Mat& x);
Mat unvec(const Eigen::VectorXcd& v, Eigen::Index n);

/// a o b (apply b first).
SuperOp compose(const SuperOp& a, const SuperOp& b);
SuperOp add(const SuperOp& a, const SuperOp& b);
SuperOp scaled(const SuperOp& t, Complex s);
/// phi(T) for phi(z) = sum_k coeffs[k] z^k.
SuperOp polynomial_of(const SuperOp& t, const std::vector<Complex>& coeffs);
SuperOp power(const SuperOp& t, int k);

/// Eigenvalues of T on M_n (distinct multiplicities are not preserved for
/// the multiplication kinds: each eigenvalue of a is reported once).
/// All n^2 eigenvalues, repeated by algebraic multiplicity.
CVec spectrum(const SuperOp& t);
double spectral_radius(const SuperOp& t);

/// Choi matrix sum_ij e_ij (x) T(e_ij); PSD iff T is completely positive.
Mat choi_matrix(const SuperOp& t);

}  // namespace rittkit
