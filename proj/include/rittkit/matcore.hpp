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

// Dense complex matrix kernel: singular values, Schatten (quasi-)norms,
// modulus, trace pairing, spectra and primary matrix functions.

#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rittkit/error.hpp"

namespace rittkit {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Schatten exponent p in (0, inf]. Values below 1 give quasi-norms.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p) {
    require(p > 0.0 && !std::isnan(p), ErrorCode::invalid_argument,
            "Schatten exponent must be positive");
  }

  static Exponent infinity() { return Exponent(kInf); }

  double value() const noexcept { return p_; }
  bool is_infinite() const noexcept { return std::isinf(p_); }
  bool is_quasi() const noexcept { return p_ < 1.0; }

  /// Conjugate exponent p* with 1/p + 1/p* = 1; defined for p >= 1.
  Exponent conjugate() const {
    require(p_ >= 1.0, ErrorCode::invalid_argument,
            "conjugate exponent undefined for p < 1");
    if (is_infinite()) return Exponent(1.0);
    if (p_ == 1.0) return infinity();
    return Exponent(p_ / (p_ - 1.0));
  }

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.p_ == b.p_; }

 private:
  double p_;
};

/// Throws unless x is square with finite entries.
void check_mat(const Mat& x, const char* who);

/// Nonincreasing singular values.
RVec singular_values(const Mat& x);

/// (sum s_i^p)^(1/p); s_1 for p = inf.
double schatten_norm_of(const RVec& singular, Exponent p);

double schatten_norm(const Mat& x, Exponent p);

/// Norm of the positive square root of a Hermitian PSD matrix h, i.e.
/// || h^(1/2) ||_p, computed from the eigenvalues of h.
double schatten_norm_of_sqrt(const Mat& h, Exponent p);

/// |x| = (x^* x)^(1/2).
Mat modulus(const Mat& x);

/// Tr(x y).
Complex trace_pairing(const Mat& x, const Mat& y);

CVec eigenvalues(const Mat& x);

double spectral_radius(const Mat& x);

/// Operator (spectral) norm, the S^inf norm.
double operator_norm(const Mat& x);

/// h^power for Hermitian PSD h. Eigenvalues below cutoff*max are treated as
/// zero, so negative powers act as pseudo-inverse powers on the support.
Mat psd_power(const Mat& h, double power, double cutoff = 1e-13);

Mat identity(Eigen::Index n);

/// e_{ij} in M_n (zero-based indices).
Mat matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j);

/// Scalar function with derivatives, as required by the Schur-Parlett
/// evaluation of clustered eigenvalues.
struct ScalarFunction {
  /// eval(z, k) returns the k-th derivative at z.
  std::function<Complex(Complex, int)> eval;
  std::string name;
  /// Optional branch cut, the ray {origin + t*direction : t >= 0}.
  std::optional<std::pair<Complex, Complex>> branch_cut;

  Complex operator()(Complex z) const { return eval(z, 0); }

  /// coeffs[k] multiplies z^k.
  static ScalarFunction polynomial(std::vector<Complex> coeffs);
  /// (1 - z)^alpha on the principal branch; cut along [1, inf).
  static ScalarFunction one_minus_power(double alpha);
  /// 1 / (lambda - z).
  static ScalarFunction resolvent(Complex lambda);
};

struct MatrixFunctionOptions {
  /// Eigenvalues closer than this (relative to max(1, |lambda|)) are
  /// evaluated together by a Taylor expansion.
  double cluster_tol = 1e-8;
  /// Minimum separation between distinct clusters below which the result
  /// carries the ill-conditioned flag.
  double warn_separation = 1e-4;
  /// Distance to the branch cut below which evaluation is refused.
  double branch_tol = 1e-12;
  int max_taylor_terms = 200;
};

struct MatrixFunctionResult {
  Mat value;
  bool ill_conditioned = false;
  double min_separation = kInf;
};

/// f(x) by Schur triangularization, reordering into eigenvalue clusters and
/// a block Parlett recurrence (triangular Sylvester solves between blocks).
MatrixFunctionResult primary_matrix_function(const Mat& x, const ScalarFunction& f,
                                             const MatrixFunctionOptions& opts = {});

}  // namespace rittkit
