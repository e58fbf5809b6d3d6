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


#include <algorithm>

#include <doctest.h>

#include "rittkit/rng.hpp"
#include "rittkit/stolzexample.hpp"
#include "rittkit/superop.hpp"

using namespace rittkit;

namespace {

std::vector<SuperOp> sample_ops(Rng& rng, int n) {
  Mat a = rng.gaussian_matrix(n, n);
  Mat u = rng.unitary(n);
  return {SuperOp::left_mult(a), SuperOp::right_mult(a), SuperOp::schur(rng.gaussian_matrix(n, n)),
          SuperOp::unitary_mixture({0.5, 0.5}, {u, u.adjoint()}),
          SuperOp::from_matrix(rng.gaussian_matrix(n * n, n * n))};
}

}  // namespace

TEST_CASE("structured apply agrees with the vec matrix") {
  Rng rng(21);
  for (const SuperOp& t : sample_ops(rng, 3)) {
    Mat x = rng.gaussian_matrix(3, 3);
    CHECK((vec(t.apply(x)) - t.as_matrix() * vec(x)).norm() < 1e-12 * (1 + x.norm()));
  }
}

TEST_CASE("adjoint satisfies trace duality") {
  Rng rng(22);
  for (const SuperOp& t : sample_ops(rng, 3)) {
    Mat x = rng.gaussian_matrix(3, 3), y = rng.gaussian_matrix(3, 3);
    Complex lhs = trace_pairing(t.apply(x), y);
    Complex rhs = trace_pairing(x, t.adjoint().apply(y));
    CHECK(std::abs(lhs - rhs) < 1e-10 * (1 + std::abs(lhs)));
    // Frobenius adjoint: Tr(T(x)^* y) = Tr(x^* T^dagger(y))
    Complex h1 = (t.apply(x).adjoint() * y).trace();
    Complex h2 = (x.adjoint() * t.hilbert_adjoint_apply(y)).trace();
    CHECK(std::abs(h1 - h2) < 1e-10 * (1 + std::abs(h1)));
  }
}

TEST_CASE("composition, sums and powers") {
  Rng rng(23);
  auto ops = sample_ops(rng, 3);
  Mat x = rng.gaussian_matrix(3, 3);
  for (const SuperOp& a : ops)
    for (const SuperOp& b : ops) {
      CHECK((compose(a, b).apply(x) - a.apply(b.apply(x))).norm() < 1e-10 * (1 + x.norm()) * 100);
      CHECK((add(a, b).apply(x) - a.apply(x) - b.apply(x)).norm() < 1e-10 * 100);
    }
  const SuperOp& l = ops[0];
  CHECK(compose(l, l).kind() == SuperOp::Kind::left_mult);
  CHECK((power(l, 3).apply(x) - l.apply(l.apply(l.apply(x)))).norm() < 1e-9 * 1000);
  CHECK((power(l, 0).apply(x) - x).norm() == 0.0);
  CHECK((polynomial_of(l, {1.0, 2.0}).apply(x) - x - 2.0 * l.apply(x)).norm() < 1e-10 * 100);
}

TEST_CASE("dimension mismatch is reported") {
  SuperOp t = SuperOp::left_mult(Mat::Identity(3, 3));
  CHECK_THROWS_AS(t.apply(Mat::Identity(2, 2)), Error);
  CHECK_THROWS_AS(compose(t, SuperOp::identity(2)), Error);
  CHECK_THROWS_AS(SuperOp::from_matrix(Mat::Identity(5, 5)), Error);
}

TEST_CASE("spectrum of left multiplication repeats each eigenvalue n times") {
  DiagA a = make_diag_a(3);
  CVec ev = spectrum(a.left());
  std::vector<double> got;
  for (Eigen::Index i = 0; i < ev.size(); ++i) got.push_back(ev(i).real());
  std::sort(got.begin(), got.end());
  REQUIRE(got.size() == 9);
  for (int k = 0; k < 3; ++k)
    for (int r = 0; r < 3; ++r) CHECK(got[static_cast<std::size_t>(3 * k + r)] == doctest::Approx(a.entry(k)));
  CHECK(spectral_radius(a.left()) == doctest::Approx(0.875));
}

TEST_CASE("choi matrix blocks are the images of matrix units") {
  Rng rng(24);
  SuperOp t = SuperOp::from_matrix(rng.gaussian_matrix(4, 4));
  Mat c = choi_matrix(t);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK((c.block(2 * i, 2 * j, 2, 2) - t.apply(matrix_unit(2, i, j))).norm() < 1e-14);
}

TEST_CASE("choi matrix of a unitary conjugation is positive") {
  Rng rng(25);
  Mat u = rng.unitary(3);
  Mat c = choi_matrix(SuperOp::unitary_mixture({0.5, 0.5}, {u, u.adjoint()}));
  Eigen::SelfAdjointEigenSolver<Mat> es(c);
  CHECK(es.eigenvalues().minCoeff() > -1e-12);
}
