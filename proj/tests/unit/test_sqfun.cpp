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


#include <cmath>

#include <doctest.h>

#include "rittkit/rng.hpp"
#include "rittkit/sqfun.hpp"
#include "rittkit/stolzexample.hpp"

using namespace rittkit;

namespace {

// ||(I + rho a)^{-1} x||_p, the column square function of x for rho L_a
double closed_form(const DiagA& a, const Mat& x, double rho, Exponent p) {
  Mat y = x;
  for (int k = 0; k < a.n; ++k) y.row(k) /= 1.0 + rho * a.entry(k);
  return schatten_norm(y, p);
}

}  // namespace

TEST_CASE("scalar series") {
  Rng rng(51);
  for (int i = 0; i < 30; ++i) {
    Complex z = std::polar(0.95 * rng.uniform(), 2 * M_PI * rng.uniform());
    Complex want = 1.0 / ((1.0 - z) * (1.0 - z));
    CHECK(std::abs(derivative_geometric_sum(z) - want) <= 1e-12 * std::abs(want));
    CHECK(std::abs(reconstruction_scalar_sum(z) - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(derivative_geometric_sum(1.0), Error);
  CHECK_THROWS_AS(reconstruction_scalar_sum(Complex(0, -1)), Error);
}

TEST_CASE("tail series dominates the true tail") {
  const PowerBound pb{1.0, 0.9, 1};
  for (long k : {1L, 10L, 100L}) {
    double exact = 0;
    for (long j = k + 1; j < k + 20000; ++j) exact += static_cast<double>(j) * std::pow(0.9, static_cast<double>(j - 1));
    double bound = tail_series(pb, 1.0, k, 1, 1.0);
    CHECK(bound >= exact * (1 - 1e-12));
    if (k == 100) CHECK(bound <= exact * 1.2);
  }
  CHECK(std::isinf(tail_series({1.0, 0.999, 1}, 1.0, 1, 1, 1.0)));
}

TEST_CASE("power bound of a non-normal contraction") {
  Mat j(2, 2);
  j << 0.5, 4.0, 0.0, 0.5;
  SuperOp s = SuperOp::left_mult(j);
  PowerBound pb = power_bound(s);
  Mat pw = Mat::Identity(2, 2);
  for (int k = 0; k < 60; ++k) {
    double bound = pb.b * std::pow(pb.q, std::floor(static_cast<double>(k) / static_cast<double>(pb.m)));
    CHECK(operator_norm(pw) <= bound * (1 + 1e-12));
    pw = pw * j;
  }
  CHECK_THROWS_AS(power_bound(SuperOp::identity(2)), Error);
}

TEST_CASE("column square function matches the closed form") {
  DiagA a = make_diag_a(5);
  Rng rng(52);
  for (double pv : {4.0 / 3.0, 4.0}) {
    Mat x = rng.gaussian_matrix(5, 5);
    SqSpec spec;
    spec.p = Exponent(pv);
    spec.rho = 0.99;
    SqResult r = square_function(a.left(), x, spec);
    double want = closed_form(a, x, 0.99, spec.p);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-6));
    CHECK(r.lower <= want * (1 + 1e-12));
    CHECK(r.upper >= want * (1 - 1e-12));
  }
}

TEST_CASE("truncation grows with the tolerance") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(53).gaussian_matrix(4, 4);
  SqSpec loose, tight;
  loose.tol = 1e-3;
  tight.tol = 1e-9;
  CHECK(square_function(a.left(), x, loose).k_used <= square_function(a.left(), x, tight).k_used);
}

TEST_CASE("K_max stops the truncation") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(54).gaussian_matrix(4, 4);
  SqSpec spec;
  spec.k_max = 8;
  SqResult r = square_function(a.left(), x, spec);
  CHECK(r.k_used == 8);
  CHECK_FALSE(r.converged);
  CHECK(r.upper > r.value);
}

TEST_CASE("column equals row at p = 2") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(55).gaussian_matrix(4, 4);
  SqSpec c, r;
  r.kind = SqKind::row;
  CHECK(square_function(a.right(), x, c).value == doctest::Approx(square_function(a.right(), x, r).value));
}

TEST_CASE("rad and split square functions sit below column and row for p < 2") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(56).gaussian_matrix(4, 4);
  SqSpec spec;
  spec.p = Exponent(4.0 / 3.0);
  spec.tol = 1e-4;
  double col = square_function(a.right(), x, spec).value;
  spec.kind = SqKind::row;
  double row = square_function(a.right(), x, spec).value;
  spec.kind = SqKind::rad;
  SqResult rad = square_function(a.right(), x, spec);
  spec.kind = SqKind::split;
  SqResult split = square_function(a.right(), x, spec);
  CHECK(rad.value <= std::min(col, row) * (1 + 1e-9));
  CHECK(split.value <= std::min(col, row) * (1 + 1e-9));
  CHECK(rad.lower <= rad.upper);
  CHECK(split.lower <= split.upper);
  // the rad norm never exceeds the split value
  CHECK(rad.lower <= split.upper * (1 + 1e-9));
}

TEST_CASE("rad square function above 2 is the larger one-sided value") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(57).gaussian_matrix(4, 4);
  SqSpec spec;
  spec.p = Exponent(4.0);
  double col = square_function(a.right(), x, spec).value;
  spec.kind = SqKind::row;
  double row = square_function(a.right(), x, spec).value;
  spec.kind = SqKind::rad;
  CHECK(square_function(a.right(), x, spec).value == doctest::Approx(std::max(col, row)));
}

TEST_CASE("square function input validation") {
  DiagA a = make_diag_a(3);
  Mat x = Mat::Identity(3, 3);
  SqSpec spec;
  spec.alpha = 0;
  CHECK_THROWS_AS(square_function(a.left(), x, spec), Error);
  spec = SqSpec{};
  spec.rho = 1.5;
  CHECK_THROWS_AS(square_function(a.left(), x, spec), Error);
  spec = SqSpec{};
  CHECK_THROWS_AS(square_function(a.left(), Mat::Identity(2, 2), spec), Error);
  try {
    square_function(SuperOp::identity(3), x, SqSpec{});
    FAIL("expected a spectrum error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::spectrum);
  }
  CHECK(sq_kind_from_string("split") == SqKind::split);
  CHECK_THROWS_AS(sq_kind_from_string("diagonal"), Error);
}

TEST_CASE("square functions of different alpha are comparable") {
  AlphaExperiment e = alpha_equivalence_experiment(make_diag_a(4).left(), Exponent(4.0 / 3.0), {0.5, 1.0, 2.0},
                                                   SqKind::col, 3, 9, 0.99);
  REQUIRE(e.ratios.size() == 3);
  CHECK(e.ratios[0][1][1] == doctest::Approx(1.0));
  CHECK(std::isfinite(e.max_spread));
  CHECK(e.max_spread >= 1.0);
  CHECK(e.max_spread < 10.0);
}

TEST_CASE("prefix rad keeps the energetic blocks") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(58).gaussian_matrix(4, 4);
  SqSpec spec;
  spec.tol = 1e-10;
  BlockVec seq = sq_sequence(a.left(), x, spec);
  PrefixRad pr = rad_prefix_bracket(seq, Exponent(4.0 / 3.0), RadOptions{}, 1e-8, 16);
  CHECK(pr.prefix == 16);
  CHECK(pr.rest_column > 0.0);
  CHECK(pr.upper() <= column_norm(seq, Exponent(4.0 / 3.0)) + pr.rest_column + 1e-9);
}
