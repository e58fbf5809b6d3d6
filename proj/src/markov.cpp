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

#include "rittkit/markov.hpp"

#include <algorithm>
#include <cmath>

namespace rittkit {

namespace {

constexpr double kTol = 1e-10;
constexpr double kMinusOneMargin = 1e-8;

}  // namespace

MarkovCertificate validate_markov(const SuperOp& t) {
  const Eigen::Index n = t.dim();
  const double nd = static_cast<double>(n);
  MarkovCertificate c;
  const Mat id = Mat::Identity(n, n);
  c.unital = (t.apply(id) - id).cwiseAbs().maxCoeff() <= kTol;

  // normalized trace tau = Tr / n throughout
  c.trace_preserving = true;
  std::vector<Mat> images;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      Mat img = t.apply(matrix_unit(n, i, j));
      double expected = i == j ? 1.0 / nd : 0.0;
      if (std::abs(img.trace() / nd - expected) > kTol) c.trace_preserving = false;
      images.push_back(std::move(img));
    }

  Mat choi = choi_matrix(t);
  Mat h = 0.5 * (choi + choi.adjoint());
  if ((choi - h).cwiseAbs().maxCoeff() <= kTol) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
    c.cp = es.eigenvalues().minCoeff() >= -kTol;
  }

  // tau(T(e_ij) e_kl) = tau(e_ij T(e_kl)) for every pair of basis elements
  c.selfadjoint = true;
  for (Eigen::Index a = 0; a < n * n && c.selfadjoint; ++a)
    for (Eigen::Index b = 0; b < n * n; ++b) {
      const Mat ea = matrix_unit(n, a % n, a / n), eb = matrix_unit(n, b % n, b / n);
      Complex lhs = trace_pairing(images[static_cast<std::size_t>(a)], eb) / nd;
      Complex rhs = trace_pairing(ea, images[static_cast<std::size_t>(b)]) / nd;
      if (std::abs(lhs - rhs) > kTol) {
        c.selfadjoint = false;
        break;
      }
    }

  CVec ev = spectrum(t);
  c.minus_one_free = true;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i) + 1.0) <= kMinusOneMargin) c.minus_one_free = false;
  return c;
}

MarkovMap schur_markov(const Mat& m) {
  check_mat(m, "schur_markov");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  require(m.imag().cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorCode::invalid_argument,
          "schur_markov: multiplier is not real");
  require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale, ErrorCode::invalid_argument,
          "schur_markov: multiplier is not symmetric");
  require((m.diagonal().array() - 1.0).abs().maxCoeff() <= 1e-12, ErrorCode::invalid_argument,
          "schur_markov: diagonal entries must equal 1");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-12 * scale, ErrorCode::invalid_argument,
          "schur_markov: multiplier is not positive semidefinite");
  SuperOp op = SuperOp::schur(m.real().cast<Complex>());
  MarkovCertificate cert = validate_markov(op);
  return {std::move(op), cert};
}

MarkovMap unitary_mixture_markov(const std::vector<double>& weights, const std::vector<Mat>& unitaries) {
  require(!weights.empty() && weights.size() == unitaries.size(), ErrorCode::invalid_argument,
          "unitary_mixture_markov: need one weight per unitary");
  double total = 0.0;
  for (double w : weights) {
    require(w > 0.0 && std::isfinite(w), ErrorCode::invalid_argument, "unitary_mixture_markov: weights must be positive");
    total += w;
  }
  require(std::abs(total - 1.0) <= 1e-12, ErrorCode::invalid_argument, "unitary_mixture_markov: weights must sum to 1");
  const Eigen::Index n = unitaries.front().rows();
  for (const Mat& u : unitaries) {
    check_mat(u, "unitary_mixture_markov");
    require(u.rows() == n, ErrorCode::dimension_mismatch, "unitary_mixture_markov: mixed dimensions");
    require((u.adjoint() * u - Mat::Identity(n, n)).cwiseAbs().maxCoeff() <= kTol, ErrorCode::invalid_argument,
            "unitary_mixture_markov: matrix is not unitary");
  }
  for (std::size_t i = 0; i < unitaries.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < unitaries.size() && !found; ++j)
      found = std::abs(weights[i] - weights[j]) <= 1e-12 &&
              (unitaries[j] - unitaries[i].adjoint()).cwiseAbs().maxCoeff() <= kTol;
    require(found, ErrorCode::invalid_argument,
            "unitary_mixture_markov: family is not closed under adjoints with matching weights");
  }
  SuperOp op = SuperOp::unitary_mixture(weights, unitaries);
  MarkovCertificate cert = validate_markov(op);
  return {std::move(op), cert};
}

Mat ergodic_projection(const SuperOp& t) {
  const Mat m = t.as_matrix();
  const Eigen::Index d = m.rows();
  Eigen::JacobiSVD<Mat> svd(Mat::Identity(d, d) - m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, s(0));
  Eigen::Index null_dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) <= cut) ++null_dim;
  if (null_dim == 0) return Mat::Zero(d, d);
  Mat r = svd.matrixV().rightCols(null_dim);
  Mat l = svd.matrixU().rightCols(null_dim);
  Mat lr = l.adjoint() * r;
  return r * lr.fullPivLu().solve(l.adjoint());
}

MarkovDemo markov_decomposition_demo(const MarkovMap& t, Exponent p, const Mat& x, const DecompOptions& opts) {
  const MarkovCertificate& c = t.certificate;
  if (!c.unital) fail(ErrorCode::invalid_argument, "markov demo: map is not unital");
  if (!c.trace_preserving) fail(ErrorCode::invalid_argument, "markov demo: map is not trace preserving");
  if (!c.cp) fail(ErrorCode::invalid_argument, "markov demo: map is not completely positive");
  if (!c.selfadjoint) fail(ErrorCode::invalid_argument, "markov demo: map is not selfadjoint");
  if (!c.minus_one_free) fail(ErrorCode::spectrum, "markov demo: -1 lies in the spectrum");
  const Eigen::Index n = t.op.dim();
  require(x.rows() == n && x.cols() == n, ErrorCode::dimension_mismatch, "markov demo: x does not match the map");

  const Mat proj = ergodic_projection(t.op);
  const Eigen::Index d = n * n;
  MarkovDemo out;
  out.fixed_dim = static_cast<Eigen::Index>(std::llround(proj.trace().real()));
  if (out.fixed_dim >= d)
    fail(ErrorCode::spectrum, "markov demo: every matrix is fixed by T, so Ran(I - T) is trivial");

  const SuperOp restricted = SuperOp::from_matrix(t.op.as_matrix() - proj);
  out.x_restricted = unvec(vec(x) - proj * vec(x), n);
  out.result = decompose(restricted, out.x_restricted, p, opts);
  return out;
}

}  // namespace rittkit
