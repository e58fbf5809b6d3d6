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

// Ritt diagnostics, Stolz domains, fractional powers and functional
// calculus bounds for operators on S^p_n.

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "rittkit/superop.hpp"

namespace rittkit {

/// Polynomial coefficients, constant term first.
using Polynomial = std::vector<Complex>;

Complex eval_polynomial(const Polynomial& phi, Complex z);

/// B_gamma: interior of the convex hull of 1 and the disc D(0, sin gamma).
class StolzDomain {
 public:
  explicit StolzDomain(double gamma);

  double gamma() const noexcept { return gamma_; }
  double radius() const noexcept { return s_; }
  /// Tangent points s e^{+-i phi} with cos phi = s.
  Complex upper_tangent() const;
  Complex lower_tangent() const;
  bool contains(Complex z) const;

 private:
  double gamma_;
  double s_;
};

bool stolz_membership(Complex z, const StolzDomain& d);

/// Smallest gamma (bisection to 1e-3) such that every eigenvalue of T other
/// than 1 lies in B_{gamma - margin}; nullopt when no Stolz domain works.
std::optional<double> min_stolz_angle(const SuperOp& t, double margin = 1e-2);

/// (I - T)^alpha on the principal branch.
SuperOp fractional_power(const SuperOp& t, double alpha);

struct NormBracket {
  double lower = 0.0;
  double upper = 0.0;
  bool exact() const { return lower == upper; }
};

struct NormOptions {
  int starts = 4;
  int steps = 30;
  std::uint64_t seed = 0x0b0d;
};

/// Bracket of the S^p -> S^p norm. Exact for multiplications and p = 2;
/// otherwise a power-method lower bound and interpolation upper bound.
NormBracket operator_norm_bracket(const SuperOp& t, Exponent p, const NormOptions& opts = {});

struct RittOptions {
  int theta_points = 64;
  /// r values of the grid lambda = 1 + r e^{i theta}.
  std::vector<double> radii = [] {
    std::vector<double> r;
    for (int j = 0; j <= 8; ++j) r.push_back(std::pow(10.0, -3.0 + 0.5 * j));
    return r;
  }();
  NormOptions norm;
};

struct RittReport {
  /// sup_{0 <= k <= n_max} ||T^k|| (upper and lower estimates).
  double power_bound = 0.0;
  double power_lower = 0.0;
  /// sup_{1 <= k <= n_max} k ||T^k - T^{k-1}||.
  double diff_bound = 0.0;
  double diff_lower = 0.0;
  int diff_argmax = 0;
  /// sup over the grid of |lambda - 1| ||R(lambda, T)||.
  double resolvent_bound = 0.0;
  double resolvent_lower = 0.0;
  int grid_points = 0;
  int flagged_points = 0;
  int n_max = 0;
  double spectral_radius = 0.0;
  bool exact = true;
};

RittReport ritt_constants(const SuperOp& t, int n_max, Exponent p, const RittOptions& opts = {});

/// Sampled lower bound for the Col-bound of a family: max over random
/// sub-families (T_k) and x_k of col((T_k x_k)) / col((x_k)).
double col_bound_sample(const std::vector<SuperOp>& family, Exponent p, int trials, std::uint64_t seed);
double row_bound_sample(const std::vector<SuperOp>& family, Exponent p, int trials, std::uint64_t seed);

struct QuadratureResult {
  double bound = 0.0;
  double error = 0.0;
};

/// (1/2pi) int |phi(z)| ||R(z, T)|| |dz| over the notched boundary of B_gamma,
/// by composite Gauss-Legendre with adaptive panel splitting.
QuadratureResult fc_upper_bound(const SuperOp& t, const StolzDomain& d, const Polynomial& phi, Exponent p,
                                int nodes = 64, double notch = 1e-3);

/// max over random polynomials of ||phi(T)|| / sup_{B_gamma} |phi|. The
/// boundary sup is over-estimated with a derivative bound, so this is a
/// valid lower bound for the calculus constant.
double fc_lower_bound(const SuperOp& t, const StolzDomain& d, int degree, int trials, Exponent p,
                      std::uint64_t seed);

/// Sampled ||(I_{M_m} (x) phi(T)) Y||_p / ||Y||_p; nested over levels 1..m so
/// it is nondecreasing in m.
double cb_lower_bound(const SuperOp& t, int m, Exponent p, const Polynomial& phi, int trials, std::uint64_t seed);

}  // namespace rittkit
