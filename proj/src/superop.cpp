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

#include "rittkit/superop.hpp"

#include <cmath>

namespace rittkit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// vec(x)_{i + n j} = x_ij, so Tr(x y) = vec(x)^T P vec(y) with P the
// transposition permutation.
Eigen::PermutationMatrix<Eigen::Dynamic> transpose_perm(Eigen::Index n) {
  Eigen::PermutationMatrix<Eigen::Dynamic> p(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) p.indices()(i + n * j) = static_cast<int>(j + n * i);
  return p;
}

Mat horner(const Mat& a, const std::vector<Complex>& coeffs) {
  const Eigen::Index n = a.rows();
  Mat acc = Mat::Zero(n, n);
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    acc = acc * a;
    acc.diagonal().array() += coeffs[k];
  }
  return acc;
}

}  // namespace

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd vec(const Mat& x) { return Eigen::Map<const Eigen::VectorXcd>(x.data(), x.size()); }

Mat unvec(const Eigen::VectorXcd& v, Eigen::Index n) { return Eigen::Map<const Mat>(v.data(), n, n); }

SuperOp SuperOp::identity(Eigen::Index n) {
  require(n > 0, ErrorCode::invalid_argument, "SuperOp::identity: n must be positive");
  return left_mult(Mat::Identity(n, n));
}

SuperOp SuperOp::left_mult(Mat a) {
  check_mat(a, "SuperOp::left_mult");
  Eigen::Index n = a.rows();
  return SuperOp(n, LeftMult{std::move(a)});
}

SuperOp SuperOp::right_mult(Mat a) {
  check_mat(a, "SuperOp::right_mult");
  Eigen::Index n = a.rows();
  return SuperOp(n, RightMult{std::move(a)});
}

SuperOp SuperOp::schur(Mat m) {
  check_mat(m, "SuperOp::schur");
  Eigen::Index n = m.rows();
  return SuperOp(n, Schur{std::move(m)});
}

SuperOp SuperOp::unitary_mixture(std::vector<double> weights, std::vector<Mat> unitaries) {
  require(!weights.empty() && weights.size() == unitaries.size(), ErrorCode::invalid_argument,
          "SuperOp::unitary_mixture: need one weight per unitary");
  Eigen::Index n = unitaries.front().rows();
  for (const Mat& u : unitaries) {
    check_mat(u, "SuperOp::unitary_mixture");
    require(u.rows() == n, ErrorCode::dimension_mismatch, "SuperOp::unitary_mixture: mixed dimensions");
  }
  return SuperOp(n, Mixture{std::move(weights), std::move(unitaries)});
}

SuperOp SuperOp::from_matrix(Mat m) {
  check_mat(m, "SuperOp::from_matrix");
  auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(m.rows()))));
  require(n * n == m.rows(), ErrorCode::dimension_mismatch, "SuperOp::from_matrix: size must be n^2");
  return SuperOp(n, Explicit{std::move(m)});
}

SuperOp::Kind SuperOp::kind() const {
  return std::visit(overloaded{[](const LeftMult&) { return Kind::left_mult; },
                               [](const RightMult&) { return Kind::right_mult; },
                               [](const Schur&) { return Kind::schur; },
                               [](const Mixture&) { return Kind::unitary_mixture; },
                               [](const Explicit&) { return Kind::explicit_matrix; }},
                    rep_);
}

std::string SuperOp::kind_name() const {
  switch (kind()) {
    case Kind::left_mult: return "left_mult";
    case Kind::right_mult: return "right_mult";
    case Kind::schur: return "schur";
    case Kind::unitary_mixture: return "unitary_mixture";
    case Kind::explicit_matrix: return "explicit";
  }
  return "unknown";
}

Mat SuperOp::apply(const Mat& x) const {
  if (x.rows() != n_ || x.cols() != n_) fail(ErrorCode::dimension_mismatch, "SuperOp::apply: dimension mismatch");
  return std::visit(overloaded{[&](const LeftMult& r) -> Mat { return r.a * x; },
                               [&](const RightMult& r) -> Mat { return x * r.a; },
                               [&](const Schur& r) -> Mat { return r.m.cwiseProduct(x); },
                               [&](const Mixture& r) -> Mat {
                                 Mat out = Mat::Zero(n_, n_);
                                 for (std::size_t i = 0; i < r.w.size(); ++i)
                                   out += r.w[i] * (r.u[i] * x * r.u[i].adjoint());
                                 return out;
                               },
                               [&](const Explicit& r) -> Mat { return unvec(r.m * vec(x), n_); }},
                    rep_);
}

SuperOp SuperOp::adjoint() const {
  return std::visit(overloaded{[&](const LeftMult& r) { return right_mult(r.a); },
                               [&](const RightMult& r) { return left_mult(r.a); },
                               [&](const Schur& r) { return schur(r.m.transpose()); },
                               [&](const Mixture& r) {
                                 std::vector<Mat> us;
                                 for (const Mat& u : r.u) us.push_back(u.adjoint());
                                 return unitary_mixture(r.w, std::move(us));
                               },
                               [&](const Explicit& r) {
                                 auto p = transpose_perm(n_);
                                 Mat m = p * r.m.transpose() * p;
                                 return from_matrix(std::move(m));
                               }},
                    rep_);
}

Mat SuperOp::hilbert_adjoint_apply(const Mat& y) const {
  return std::visit(overloaded{[&](const LeftMult& r) -> Mat { return r.a.adjoint() * y; },
                               [&](const RightMult& r) -> Mat { return y * r.a.adjoint(); },
                               [&](const Schur& r) -> Mat { return r.m.conjugate().cwiseProduct(y); },
                               [&](const Mixture& r) -> Mat {
                                 Mat out = Mat::Zero(n_, n_);
                                 for (std::size_t i = 0; i < r.w.size(); ++i)
                                   out += r.w[i] * (r.u[i].adjoint() * y * r.u[i]);
                                 return out;
                               },
                               [&](const Explicit& r) -> Mat { return unvec(r.m.adjoint() * vec(y), n_); }},
                    rep_);
}

Mat SuperOp::as_matrix() const {
  const Mat id = Mat::Identity(n_, n_);
  return std::visit(overloaded{[&](const LeftMult& r) -> Mat { return kron(id, r.a); },
                               [&](const RightMult& r) -> Mat { return kron(r.a.transpose(), id); },
                               [&](const Schur& r) -> Mat {
                                 Mat d = vec(r.m).asDiagonal();
                                 return d;
                               },
                               [&](const Mixture& r) -> Mat {
                                 Mat out = Mat::Zero(n_ * n_, n_ * n_);
                                 for (std::size_t i = 0; i < r.w.size(); ++i)
                                   out += r.w[i] * kron(r.u[i].conjugate(), r.u[i]);
                                 return out;
                               },
                               [&](const Explicit& r) -> Mat { return r.m; }},
                    rep_);
}

const Mat& SuperOp::factor() const {
  if (auto* l = std::get_if<LeftMult>(&rep_)) return l->a;
  if (auto* r = std::get_if<RightMult>(&rep_)) return r->a;
  if (auto* s = std::get_if<Schur>(&rep_)) return s->m;
  fail(ErrorCode::invalid_argument, "SuperOp::factor: not a multiplication or Schur multiplier");
}

const std::vector<double>& SuperOp::mixture_weights() const {
  if (auto* m = std::get_if<Mixture>(&rep_)) return m->w;
  fail(ErrorCode::invalid_argument, "SuperOp: not a unitary mixture");
}

const std::vector<Mat>& SuperOp::mixture_unitaries() const {
  if (auto* m = std::get_if<Mixture>(&rep_)) return m->u;
  fail(ErrorCode::invalid_argument, "SuperOp: not a unitary mixture");
}

SuperOp compose(const SuperOp& a, const SuperOp& b) {
  require(a.dim() == b.dim(), ErrorCode::dimension_mismatch, "compose: dimension mismatch");
  using K = SuperOp::Kind;
  if (a.kind() == K::left_mult && b.kind() == K::left_mult) return SuperOp::left_mult(a.factor() * b.factor());
  if (a.kind() == K::right_mult && b.kind() == K::right_mult) return SuperOp::right_mult(b.factor() * a.factor());
  if (a.kind() == K::schur && b.kind() == K::schur) return SuperOp::schur(a.factor().cwiseProduct(b.factor()));
  return SuperOp::from_matrix(a.as_matrix() * b.as_matrix());
}

SuperOp add(const SuperOp& a, const SuperOp& b) {
  require(a.dim() == b.dim(), ErrorCode::dimension_mismatch, "add: dimension mismatch");
  using K = SuperOp::Kind;
  if (a.kind() == b.kind() && (a.kind() == K::left_mult || a.kind() == K::right_mult || a.kind() == K::schur)) {
    Mat f = a.factor() + b.factor();
    if (a.kind() == K::left_mult) return SuperOp::left_mult(std::move(f));
    if (a.kind() == K::right_mult) return SuperOp::right_mult(std::move(f));
    return SuperOp::schur(std::move(f));
  }
  return SuperOp::from_matrix(a.as_matrix() + b.as_matrix());
}

SuperOp scaled(const SuperOp& t, Complex s) {
  switch (t.kind()) {
    case SuperOp::Kind::left_mult: return SuperOp::left_mult(s * t.factor());
    case SuperOp::Kind::right_mult: return SuperOp::right_mult(s * t.factor());
    case SuperOp::Kind::schur: return SuperOp::schur(s * t.factor());
    default: return SuperOp::from_matrix(s * t.as_matrix());
  }
}

SuperOp polynomial_of(const SuperOp& t, const std::vector<Complex>& coeffs) {
  const Eigen::Index n = t.dim();
  switch (t.kind()) {
    case SuperOp::Kind::left_mult: return SuperOp::left_mult(horner(t.factor(), coeffs));
    case SuperOp::Kind::right_mult: return SuperOp::right_mult(horner(t.factor(), coeffs));
    case SuperOp::Kind::schur: {
      Mat acc = Mat::Zero(n, n);
      for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc.cwiseProduct(t.factor());
        acc.array() += coeffs[k];
      }
      return SuperOp::schur(std::move(acc));
    }
    default: return SuperOp::from_matrix(horner(t.as_matrix(), coeffs));
  }
}

SuperOp power(const SuperOp& t, int k) {
  require(k >= 0, ErrorCode::invalid_argument, "power: negative exponent");
  std::vector<Complex> c(k + 1, 0.0);
  c[k] = 1.0;
  return polynomial_of(t, c);
}

CVec spectrum(const SuperOp& t) {
  switch (t.kind()) {
    case SuperOp::Kind::left_mult:
    case SuperOp::Kind::right_mult: {
      // each eigenvalue of the factor appears n times
      const CVec ev = eigenvalues(t.factor());
      return ev.replicate(t.dim(), 1);
    }
    case SuperOp::Kind::schur: return vec(t.factor());
    default: return eigenvalues(t.as_matrix());
  }
}

double spectral_radius(const SuperOp& t) { return spectrum(t).cwiseAbs().maxCoeff(); }

Mat choi_matrix(const SuperOp& t) {
  const Eigen::Index n = t.dim();
  Mat c = Mat::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c.block(i * n, j * n, n, n) = t.apply(matrix_unit(n, i, j));
  return c;
}

}  // namespace rittkit
