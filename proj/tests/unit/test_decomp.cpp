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

#include "rittkit/decomp.hpp"
#include "rittkit/rng.hpp"
#include "rittkit/stolzexample.hpp"

using namespace rittkit;

namespace {

// a random contraction with spectral radius 0.6 that is far from normal
SuperOp nonnormal_op(Rng& rng, int n) {
  Mat g = rng.gaussian_matrix(n * n, n * n);
  Mat u = g.householderQr().householderQ();
  Mat tri = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n * n; ++i) {
    tri(i, i) = 0.6 * std::polar(1.0, 0.3 * i);
    if (i + 1 < n * n) tri(i, i + 1) = 0.5;
  }
  return SuperOp::from_matrix(u * tri * u.adjoint());
}

}  // namespace

TEST_CASE("Z and Z* are adjoint for the trace pairing") {
  Rng rng(61);
  SuperOp t = nonnormal_op(rng, 2);
  std::vector<Mat> ub;
  for (int k = 0; k < 12; ++k) ub.push_back(rng.gaussian_matrix(2, 2));
  BlockVec u(std::move(ub));
  Mat y = rng.gaussian_matrix(2, 2);
  Complex lhs = trace_pairing(Z_star_apply(t, u), y);
  Complex rhs = block_pairing(u, Z_apply(t, y, 12));
  CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
}

TEST_CASE("reconstruction identity for a non-normal operator") {
  Rng rng(62);
  SuperOp t = nonnormal_op(rng, 2);
  Mat x = rng.gaussian_matrix(2, 2);
  CHECK((reconstruct_identity(t, x, 1.0) - x).norm() <= 1e-10 * x.norm());
  CHECK((reconstruct_identity(t, x, 0.9) - x).norm() <= 1e-10 * x.norm());
  // a fixed short truncation leaves a visible error
  CHECK((reconstruct_identity(t, x, 1.0, 2) - x).norm() > 1e-6 * x.norm());
}

TEST_CASE("one-sided splitters") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(63).gaussian_matrix(4, 4);
  const Exponent p(1.5);
  DecompOptions o;
  o.splitter = Splitter::all_column;
  DecompResult c = decompose(a.left(), x, p, o);
  CHECK((c.x1 - x).norm() <= 1e-8 * x.norm());
  CHECK(c.x2.norm() == 0.0);
  CHECK(c.row_sq == 0.0);
  SqSpec spec;
  spec.p = p;
  CHECK(c.constant == doctest::Approx(square_function(a.left(), x, spec).value / schatten_norm(x, p)).epsilon(1e-6));

  o.splitter = Splitter::all_row;
  DecompResult r = decompose(a.left(), x, p, o);
  CHECK((r.x2 - x).norm() <= 1e-8 * x.norm());
  CHECK(r.x1.norm() == 0.0);
}

TEST_CASE("every splitter reconstructs x") {
  Rng rng(64);
  SuperOp t = nonnormal_op(rng, 2);
  Mat x = rng.gaussian_matrix(2, 2);
  for (Splitter s : {Splitter::all_column, Splitter::all_row, Splitter::rad_optimal, Splitter::thresholded}) {
    DecompOptions o;
    o.splitter = s;
    DecompResult d = decompose(t, x, Exponent(4.0 / 3.0), o);
    CHECK(d.residual <= 1e-7);
    CHECK(std::isfinite(d.constant));
    CHECK(splitter_from_string(to_string(s)) == s);
  }
  CHECK_THROWS_AS(splitter_from_string("random"), Error);
}

TEST_CASE("rad-optimal is no worse than the one-sided splits") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(65).gaussian_matrix(4, 4);
  const Exponent p(4.0 / 3.0);
  DecompOptions o;
  double best = decompose(a.right(), x, p, o).constant;
  o.splitter = Splitter::all_column;
  double col = decompose(a.right(), x, p, o).constant;
  o.splitter = Splitter::all_row;
  double row = decompose(a.right(), x, p, o).constant;
  // the sequence blocks come from a truncation, so allow the square-function tolerance
  CHECK(best <= std::min(col, row) * (1 + 1e-3));
}

TEST_CASE("decompose input validation") {
  DiagA a = make_diag_a(3);
  Mat x = Mat::Identity(3, 3);
  CHECK_THROWS_AS(decompose(a.left(), x, Exponent(1.0)), Error);
  CHECK_THROWS_AS(decompose(a.left(), Mat::Identity(2, 2), Exponent(1.5)), Error);
  try {
    decompose(SuperOp::identity(3), x, Exponent(1.5));
    FAIL("identity accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::spectrum);
  }
  DecompOptions o;
  o.tol = 0;
  CHECK_THROWS_AS(decompose(a.left(), x, Exponent(1.5), o), Error);
}

TEST_CASE("zero input gives a zero decomposition") {
  DecompResult d = decompose(make_diag_a(3).left(), Mat::Zero(3, 3), Exponent(1.5));
  CHECK(d.x1.norm() == 0.0);
  CHECK(d.x2.norm() == 0.0);
  CHECK(d.residual == 0.0);
}

TEST_CASE("hankel regular norm") {
  // operator norms of the same nonnegative matrices from LAPACK
  CHECK(hankel_regular_check(8) == doctest::Approx(1.2589477128336857).epsilon(1e-10));
  CHECK(hankel_regular_check(64) == doctest::Approx(1.3027071993655734).epsilon(1e-10));
  CHECK(hankel_regular_check(128) == doctest::Approx(1.3067865739368274).epsilon(1e-10));
  CHECK_THROWS_AS(hankel_regular_check(0), Error);
}

TEST_CASE("split square function is bracketed") {
  DiagA a = make_diag_a(4);
  Mat x = Rng(66).gaussian_matrix(4, 4);
  SqSpec spec;
  spec.p = Exponent(4.0 / 3.0);
  spec.kind = SqKind::split;
  spec.tol = 1e-4;
  SqResult r = split_square_function(a.left(), x, spec);
  CHECK(r.lower <= r.value);
  CHECK(r.value <= r.upper);
  // Frobenius norm of the sequence is a lower bound for p <= 2
  SqSpec col = spec;
  col.kind = SqKind::col;
  CHECK(r.lower >= 0.0);
  CHECK(r.value <= square_function(a.left(), x, col).value * (1 + 1e-9));
}
