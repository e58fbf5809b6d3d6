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
#include <cmath>

#include <doctest.h>

#include "rittkit/markov.hpp"
#include "rittkit/rng.hpp"

using namespace rittkit;

namespace {

Mat toeplitz(int n, double c) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = std::pow(c, std::abs(i - j));
  return m;
}

}  // namespace

TEST_CASE("toeplitz schur map is a selfadjoint Markov map") {
  MarkovMap t = schur_markov(toeplitz(4, 0.9));
  CHECK(t.certificate.unital);
  CHECK(t.certificate.trace_preserving);
  CHECK(t.certificate.cp);
  CHECK(t.certificate.selfadjoint);
  CHECK(t.certificate.minus_one_free);
  CHECK(t.certificate.valid());
}

TEST_CASE("schur multipliers that are not Markov are rejected") {
  Mat m = toeplitz(3, 0.5);
  m(0, 0) = 0.9;
  CHECK_THROWS_AS(schur_markov(m), Error);
  Mat asym = toeplitz(3, 0.5);
  asym(0, 1) = 0.2;
  CHECK_THROWS_AS(schur_markov(asym), Error);
  Mat indef = Mat::Ones(3, 3);
  indef(0, 2) = indef(2, 0) = -1.0;
  CHECK_THROWS_AS(schur_markov(indef), Error);
}

TEST_CASE("validation detects each failing property") {
  Rng rng(71);
  // a non-unital, non-trace-preserving map
  MarkovCertificate c = validate_markov(SuperOp::left_mult(0.5 * Mat::Identity(2, 2)));
  CHECK_FALSE(c.unital);
  CHECK_FALSE(c.trace_preserving);
  // transpose is positive but not completely positive
  Mat tr = Mat::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) tr(i + 2 * j, j + 2 * i) = 1.0;
  c = validate_markov(SuperOp::from_matrix(tr));
  CHECK(c.unital);
  CHECK(c.trace_preserving);
  CHECK_FALSE(c.cp);
  // conjugation by a unitary without its adjoint is not selfadjoint
  Mat u = rng.unitary(2);
  c = validate_markov(SuperOp::unitary_mixture({1.0}, {u}));
  CHECK(c.cp);
  CHECK_FALSE(c.selfadjoint);
  // conjugation by the flip has eigenvalue -1
  Mat flip(2, 2);
  flip << 0, 1, 1, 0;
  c = validate_markov(SuperOp::unitary_mixture({1.0}, {flip}));
  CHECK_FALSE(c.minus_one_free);
}

TEST_CASE("unitary mixtures closed under adjoints") {
  Rng rng(72);
  Mat u = rng.unitary(3);
  MarkovMap t = unitary_mixture_markov({0.25, 0.25, 0.5}, {u, u.adjoint(), Mat::Identity(3, 3)});
  CHECK(t.certificate.unital);
  CHECK(t.certificate.trace_preserving);
  CHECK(t.certificate.cp);
  CHECK(t.certificate.selfadjoint);
  CHECK_THROWS_AS(unitary_mixture_markov({0.5, 0.5}, {u, Mat::Identity(3, 3)}), Error);
  CHECK_THROWS_AS(unitary_mixture_markov({0.6, 0.6}, {u, u.adjoint()}), Error);
  CHECK_THROWS_AS(unitary_mixture_markov({1.0}, {2.0 * Mat::Identity(3, 3)}), Error);
}

TEST_CASE("ergodic projection") {
  MarkovMap t = schur_markov(toeplitz(3, 0.8));
  Mat p = ergodic_projection(t.op);
  CHECK((p * p - p).norm() < 1e-10);
  // fixed points of a Schur multiplier with m_ij < 1 off the diagonal are the diagonal matrices
  CHECK(std::llround(p.trace().real()) == 3);
  Mat m = t.op.as_matrix();
  CHECK((m * p - p).norm() < 1e-10);
  CHECK((p * m - p).norm() < 1e-10);
  CHECK(ergodic_projection(SuperOp::left_mult(0.5 * Mat::Identity(2, 2))).norm() == 0.0);
}

TEST_CASE("restricted decomposition demo") {
  MarkovMap t = schur_markov(toeplitz(4, 0.9));
  Mat x = Rng(73).gaussian_matrix(4, 4);
  MarkovDemo d = markov_decomposition_demo(t, Exponent(4.0 / 3.0), x);
  CHECK(d.fixed_dim == 4);
  CHECK(d.x_restricted.diagonal().norm() < 1e-12);
  CHECK(d.result.residual <= 1e-6);
  CHECK(std::isfinite(d.result.constant));
}

TEST_CASE("demo rejects maps without a nontrivial range") {
  MarkovMap id{SuperOp::identity(2), validate_markov(SuperOp::identity(2))};
  CHECK_THROWS_AS(markov_decomposition_demo(id, Exponent(1.5), Mat::Identity(2, 2)), Error);
  Mat flip(2, 2);
  flip << 0, 1, 1, 0;
  MarkovMap f = unitary_mixture_markov({1.0}, {flip});
  try {
    markov_decomposition_demo(f, Exponent(1.5), Mat::Identity(2, 2));
    FAIL("-1 in the spectrum accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::spectrum);
  }
}
