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

#include "rittkit/blocknorm.hpp"
#include "rittkit/rng.hpp"
#include "rittkit/superop.hpp"

using namespace rittkit;

namespace {

BlockVec random_blocks(Rng& rng, int count, int n) {
  std::vector<Mat> b;
  for (int k = 0; k < count; ++k) b.push_back(rng.gaussian_matrix(n, n));
  return BlockVec(std::move(b));
}

BlockVec fixed_pair() {
  Mat x1(2, 2), x2(2, 2);
  x1 << 1, 2, 0, 0;
  x2 << 0, 0, 3, 0;
  return BlockVec({x1, x2});
}

}  // namespace

TEST_CASE("column and row norms of a fixed pair") {
  // stacked-matrix SVD oracle
  const BlockVec x = fixed_pair();
  CHECK(column_norm(x, Exponent(4.0 / 3.0)) == doctest::Approx(4.343001734157171).epsilon(1e-13));
  CHECK(row_norm(x, Exponent(4.0 / 3.0)) == doctest::Approx(4.41863305772916).epsilon(1e-13));
  CHECK(column_norm(x, Exponent(4.0)) == doctest::Approx(3.3369939654815153).epsilon(1e-13));
  CHECK(row_norm(x, Exponent(4.0)) == doctest::Approx(3.208680436096278).epsilon(1e-13));
}

TEST_CASE("column norm is the row norm of the adjoints") {
  Rng rng(31);
  BlockVec x = random_blocks(rng, 4, 3);
  for (double p : {1.0, 1.5, 3.0}) CHECK(column_norm(x, Exponent(p)) == doctest::Approx(row_norm(x.adjoint(), Exponent(p))));
}

TEST_CASE("single block norms reduce to the Schatten norm") {
  Rng rng(32);
  Mat m = rng.gaussian_matrix(4, 4);
  BlockVec x({m});
  for (double p : {1.0, 4.0 / 3.0, 4.0}) {
    CHECK(column_norm(x, Exponent(p)) == doctest::Approx(schatten_norm(m, Exponent(p))));
    CHECK(row_norm(x, Exponent(p)) == doctest::Approx(schatten_norm(m, Exponent(p))));
  }
}

TEST_CASE("mismatched blocks are rejected") {
  CHECK_THROWS_AS(BlockVec({Mat::Identity(2, 2), Mat::Identity(3, 3)}), Error);
}

TEST_CASE("norming functionals attain the norm") {
  Rng rng(33);
  BlockVec x = random_blocks(rng, 3, 3);
  for (double pv : {4.0 / 3.0, 3.0}) {
    Exponent p(pv);
    BlockVec yc = column_norming(x, p);
    CHECK(block_pairing(x, yc).real() == doctest::Approx(column_norm(x, p)).epsilon(1e-10));
    CHECK(row_norm(yc, p.conjugate()) == doctest::Approx(1.0).epsilon(1e-10));
    BlockVec yr = row_norming(x, p);
    CHECK(block_pairing(x, yr).real() == doctest::Approx(row_norm(x, p)).epsilon(1e-10));
    CHECK(column_norm(yr, p.conjugate()) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("smoothed norms approach the exact ones and have correct gradients") {
  Rng rng(34);
  BlockVec x = random_blocks(rng, 3, 3);
  const double p = 4.0 / 3.0;
  CHECK(smoothed_column_norm(x, p, 1e-9) == doctest::Approx(column_norm(x, Exponent(p))).epsilon(1e-6));
  CHECK(smoothed_row_norm(x, p, 1e-9) == doctest::Approx(row_norm(x, Exponent(p))).epsilon(1e-6));

  BlockVec g;
  smoothed_column_norm(x, p, 1e-2, &g);
  BlockVec d = random_blocks(rng, 3, 3);
  const double h = 1e-6;
  double fd = (smoothed_column_norm(x + Complex(h) * d, p, 1e-2) - smoothed_column_norm(x - Complex(h) * d, p, 1e-2)) / (2 * h);
  CHECK(fd == doctest::Approx(g.real_dot(d)).epsilon(1e-5));
  smoothed_row_norm(x, p, 1e-2, &g);
  fd = (smoothed_row_norm(x + Complex(h) * d, p, 1e-2) - smoothed_row_norm(x - Complex(h) * d, p, 1e-2)) / (2 * h);
  CHECK(fd == doctest::Approx(g.real_dot(d)).epsilon(1e-5));
}

TEST_CASE("rad norm above 2 is the larger of column and row") {
  Rng rng(35);
  BlockVec x = random_blocks(rng, 4, 3);
  RadBracket b = rad_norm_bracket(x, Exponent(4.0));
  double want = std::max(column_norm(x, Exponent(4.0)), row_norm(x, Exponent(4.0)));
  CHECK(b.lower == doctest::Approx(want));
  CHECK(b.upper == doctest::Approx(want));
}

TEST_CASE("rad norm of two orthogonal matrix units at p = 4/3") {
  // u = 0 and v = 0 both give 2^{3/4}; the optimum sqrt(2) needs a genuine split
  BlockVec x({matrix_unit(2, 0, 0), matrix_unit(2, 1, 0)});
  RadBracket b = rad_norm_bracket(x, Exponent(4.0 / 3.0));
  CHECK(b.lower <= std::sqrt(2.0) + 1e-9);
  CHECK(b.upper >= std::sqrt(2.0) - 1e-9);
  CHECK(b.upper == doctest::Approx(std::sqrt(2.0)).epsilon(2e-3));
  CHECK(b.lower == doctest::Approx(std::sqrt(2.0)).epsilon(2e-3));
  REQUIRE(b.witness.has_value());
  BlockVec u = x - *b.witness;
  CHECK(column_norm(u, Exponent(4.0 / 3.0)) + row_norm(*b.witness, Exponent(4.0 / 3.0)) == doctest::Approx(b.upper));
}

TEST_CASE("rad bracket below 2 is consistent") {
  Rng rng(36);
  for (int trial = 0; trial < 5; ++trial) {
    BlockVec x = random_blocks(rng, 3, 2);
    const Exponent p(1.5);
    RadBracket b = rad_norm_bracket(x, p);
    CHECK(b.lower <= b.upper * (1 + 1e-12));
    CHECK(b.upper <= std::min(column_norm(x, p), row_norm(x, p)) * (1 + 1e-12));
    // the Frobenius norm is a lower bound for p <= 2
    CHECK(b.upper >= x.frobenius_norm() * (1 - 1e-12));
    CHECK(b.gap() <= 2e-2);
  }
}

TEST_CASE("dual ratios never exceed the rad norm") {
  Rng rng(37);
  BlockVec x = random_blocks(rng, 3, 2);
  RadBracket b = rad_norm_bracket(x, Exponent(4.0 / 3.0));
  for (int i = 0; i < 20; ++i) {
    BlockVec y = random_blocks(rng, 3, 2);
    CHECK(rad_dual_ratio(x, y, Exponent(4.0 / 3.0)) <= b.upper * (1 + 1e-9));
  }
}

TEST_CASE("duality check holds on random instances") {
  Rng rng(38);
  for (int i = 0; i < 200; ++i) {
    BlockVec x = random_blocks(rng, 1 + i % 3, 1 + i % 4), y = random_blocks(rng, 1 + i % 3, 1 + i % 4);
    CHECK(duality_check(x, y, Exponent(4.0 / 3.0)));
    CHECK(duality_check(x, y, Exponent(4.0)));
  }
}

TEST_CASE("regular norm") {
  Mat c(2, 2);
  c << 1, -1, -1, 1;
  // |c| is the all-ones matrix
  CHECK(regular_norm(c) == doctest::Approx(2.0));
  CHECK(operator_norm(c) == doctest::Approx(2.0));
  Mat d(2, 2);
  d << 1, 1, -1, 1;
  CHECK(regular_norm(d) == doctest::Approx(2.0));
  CHECK(operator_norm(d) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("operator matrix acts row by row") {
  Rng rng(39);
  Mat a = rng.gaussian_matrix(2, 2);
  std::vector<std::vector<SuperOp>> table = {{SuperOp::left_mult(a), SuperOp::identity(2)},
                                             {SuperOp::identity(2), SuperOp::right_mult(a)}};
  Mat c(2, 2);
  c << 1, 2, 0, 1;
  BlockVec x = random_blocks(rng, 2, 2);
  BlockVec y = op_matrix_apply(c, table, x);
  CHECK((y[0] - (a * x[0] + 2.0 * x[1])).norm() < 1e-12);
  CHECK((y[1] - x[1] * a).norm() < 1e-12);
}
