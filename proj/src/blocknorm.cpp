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

#include "rittkit/blocknorm.hpp"

#include <algorithm>
#include <cmath>

#include "rittkit/rng.hpp"
#include "rittkit/superop.hpp"

namespace rittkit {

BlockVec::BlockVec(std::vector<Mat> blocks) : blocks_(std::move(blocks)) {
  require(!blocks_.empty(), ErrorCode::invalid_argument, "BlockVec: needs at least one block");
  const Eigen::Index n = blocks_.front().rows();
  for (const Mat& b : blocks_) {
    check_mat(b, "BlockVec");
    require(b.rows() == n, ErrorCode::dimension_mismatch, "BlockVec: blocks must share one dimension");
  }
}

BlockVec BlockVec::zeros(std::size_t count, Eigen::Index n) {
  require(count > 0 && n > 0, ErrorCode::invalid_argument, "BlockVec::zeros: empty shape");
  return BlockVec(std::vector<Mat>(count, Mat::Zero(n, n)));
}

void BlockVec::push_back(Mat block) {
  check_mat(block, "BlockVec::push_back");
  if (!blocks_.empty() && block.rows() != dim())
    fail(ErrorCode::dimension_mismatch, "BlockVec::push_back: dimension mismatch");
  blocks_.push_back(std::move(block));
}

void BlockVec::resize(std::size_t count) {
  require(!blocks_.empty(), ErrorCode::invalid_argument, "BlockVec::resize: empty sequence");
  blocks_.resize(count, Mat::Zero(dim(), dim()));
}

BlockVec& BlockVec::operator+=(const BlockVec& other) {
  require(size() == other.size() && dim() == other.dim(), ErrorCode::dimension_mismatch, "BlockVec: shape mismatch");
  for (std::size_t k = 0; k < size(); ++k) blocks_[k] += other.blocks_[k];
  return *this;
}

BlockVec& BlockVec::operator-=(const BlockVec& other) {
  require(size() == other.size() && dim() == other.dim(), ErrorCode::dimension_mismatch, "BlockVec: shape mismatch");
  for (std::size_t k = 0; k < size(); ++k) blocks_[k] -= other.blocks_[k];
  return *this;
}

BlockVec& BlockVec::operator*=(Complex s) {
  for (Mat& b : blocks_) b *= s;
  return *this;
}

BlockVec BlockVec::adjoint() const {
  BlockVec out = *this;
  for (Mat& b : out.blocks_) b = b.adjoint().eval();
  return out;
}

double BlockVec::real_dot(const BlockVec& other) const {
  require(size() == other.size(), ErrorCode::dimension_mismatch, "BlockVec::real_dot: shape mismatch");
  double acc = 0.0;
  for (std::size_t k = 0; k < size(); ++k) acc += (blocks_[k].conjugate().array() * other.blocks_[k].array()).sum().real();
  return acc;
}

double BlockVec::frobenius_norm() const {
  double acc = 0.0;
  for (const Mat& b : blocks_) acc += b.squaredNorm();
  return std::sqrt(acc);
}

Mat column_gram(const BlockVec& x) {
  require(!x.empty(), ErrorCode::invalid_argument, "column_gram: empty sequence");
  Mat s = Mat::Zero(x.dim(), x.dim());
  for (const Mat& b : x.blocks()) s.noalias() += b.adjoint() * b;
  return s;
}

Mat row_gram(const BlockVec& x) {
  require(!x.empty(), ErrorCode::invalid_argument, "row_gram: empty sequence");
  Mat s = Mat::Zero(x.dim(), x.dim());
  for (const Mat& b : x.blocks()) s.noalias() += b * b.adjoint();
  return s;
}

double column_norm(const BlockVec& x, Exponent p) { return schatten_norm_of_sqrt(column_gram(x), p); }

double row_norm(const BlockVec& x, Exponent p) { return schatten_norm_of_sqrt(row_gram(x), p); }

Mat stacked_column(const BlockVec& x) {
  const Eigen::Index n = x.dim();
  const auto k = static_cast<Eigen::Index>(x.size());
  Mat out = Mat::Zero(k * n, k * n);
  for (Eigen::Index i = 0; i < k; ++i) out.block(i * n, 0, n, n) = x[i];
  return out;
}

Mat stacked_row(const BlockVec& x) {
  const Eigen::Index n = x.dim();
  const auto k = static_cast<Eigen::Index>(x.size());
  Mat out = Mat::Zero(k * n, k * n);
  for (Eigen::Index i = 0; i < k; ++i) out.block(0, i * n, n, n) = x[i];
  return out;
}

Complex block_pairing(const BlockVec& x, const BlockVec& y) {
  require(x.size() == y.size() && x.dim() == y.dim(), ErrorCode::dimension_mismatch, "block_pairing: shape mismatch");
  Complex acc = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) acc += trace_pairing(x[k], y[k]);
  return acc;
}

double smoothed_column_norm(const BlockVec& u, double p, double eps, BlockVec* grad) {
  const Eigen::Index n = u.dim();
  Mat s = column_gram(u);
  s.diagonal().array() += eps * eps;
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  RVec ev = es.eigenvalues().cwiseMax(0.0);
  double emax = std::max(ev.maxCoeff(), 1e-300);
  double tr_scaled = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) tr_scaled += std::pow(ev(i) / emax, p / 2);
  double value = std::sqrt(emax) * std::pow(tr_scaled, 1.0 / p);
  if (grad) {
    RVec w(n);
    for (Eigen::Index i = 0; i < n; ++i)
      w(i) = ev(i) > 1e-14 * emax ? std::pow(ev(i), p / 2 - 1) : 0.0;
    Mat sp = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
    double factor = std::pow(value, 1.0 - p);
    *grad = u;
    for (std::size_t k = 0; k < u.size(); ++k) (*grad)[k] = factor * (u[k] * sp);
  }
  return value;
}

double smoothed_row_norm(const BlockVec& v, double p, double eps, BlockVec* grad) {
  if (!grad) return smoothed_column_norm(v.adjoint(), p, eps, nullptr);
  BlockVec g;
  double value = smoothed_column_norm(v.adjoint(), p, eps, &g);
  *grad = g.adjoint();
  return value;
}

namespace {

void require_reflexive(Exponent p, const char* who) {
  if (!(p.value() > 1.0) || p.is_infinite())
    fail(ErrorCode::invalid_argument, std::string(who) + ": requires 1 < p < inf");
}

double exact_split(const BlockVec& x, const BlockVec& v, Exponent p) {
  return column_norm(x - v, p) + row_norm(v, p);
}

// Best dual ratio over the norming functionals of the current split.
double certificate_lower(const BlockVec& x, const BlockVec& v, Exponent p) {
  BlockVec u = x - v;
  double cu = column_norm(u, p), rv = row_norm(v, p);
  std::optional<BlockVec> yc, yr;
  if (cu > 0) yc = column_norming(u, p);
  if (rv > 0) yr = row_norming(v, p);
  double best = 0.0;
  if (yc && yr) {
    for (int i = 0; i <= 20; ++i) {
      double t = i / 20.0;
      BlockVec y = t * *yc;
      y += (1.0 - t) * *yr;
      best = std::max(best, rad_dual_ratio(x, y, p));
    }
  } else if (yc) {
    best = rad_dual_ratio(x, *yc, p);
  } else if (yr) {
    best = rad_dual_ratio(x, *yr, p);
  }
  return best;
}

// Normalized ascent of Re<x, y> / max(col_{p*}(y), row_{p*}(y)) from y0.
double dual_ascent(const BlockVec& x, BlockVec y, Exponent p, int steps) {
  const Exponent q = p.conjugate();
  const BlockVec xs = x.adjoint();  // Frobenius gradient of Re<x, y>
  auto eval = [&](const BlockVec& yy, BlockVec* grad) -> double {
    Complex pair = block_pairing(x, yy);
    BlockVec gc, gr;
    double c = smoothed_column_norm(yy, q.value(), 0.0, grad ? &gc : nullptr);
    double r = smoothed_row_norm(yy, q.value(), 0.0, grad ? &gr : nullptr);
    double nrm = std::max(c, r);
    if (nrm <= 0) return 0.0;
    double ratio = pair.real() / nrm;
    if (grad) {
      *grad = xs;
      *grad -= ratio * (c >= r ? gc : gr);
      *grad *= 1.0 / nrm;
    }
    return ratio;
  };
  // rotate so that the pairing is real and nonnegative
  Complex pair = block_pairing(x, y);
  if (std::abs(pair) > 0) y *= std::conj(pair) / std::abs(pair);
  BlockVec g;
  double cur = eval(y, &g);
  double best = std::abs(cur);
  double step = y.frobenius_norm() / std::max(g.frobenius_norm(), 1e-300);
  for (int s = 0; s < steps && step > 0; ++s) {
    BlockVec trial = y;
    trial += step * g;
    BlockVec gt;
    double val = eval(trial, &gt);
    if (val > cur) {
      y = std::move(trial);
      g = std::move(gt);
      cur = val;
      step *= 1.5;
    } else {
      step *= 0.25;
    }
    best = std::max(best, std::abs(cur));
  }
  return std::max(best, rad_dual_ratio(x, y, p));
}

}  // namespace

BlockVec column_norming(const BlockVec& x, Exponent p) {
  require_reflexive(p, "column_norming");
  const double pv = p.value();
  Mat s = column_gram(x);
  double nrm = schatten_norm_of_sqrt(s, p);
  require(nrm > 0, ErrorCode::invalid_argument, "column_norming: zero sequence");
  Mat sp = psd_power(s, (pv - 2) / 2);
  double factor = std::pow(nrm, 1.0 - pv);
  BlockVec y = x;
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = factor * (sp * x[k].adjoint());
  return y;
}

BlockVec row_norming(const BlockVec& x, Exponent p) {
  require_reflexive(p, "row_norming");
  const double pv = p.value();
  Mat s = row_gram(x);
  double nrm = schatten_norm_of_sqrt(s, p);
  require(nrm > 0, ErrorCode::invalid_argument, "row_norming: zero sequence");
  Mat sp = psd_power(s, (pv - 2) / 2);
  double factor = std::pow(nrm, 1.0 - pv);
  BlockVec y = x;
  for (std::size_t k = 0; k < x.size(); ++k) y[k] = factor * (x[k].adjoint() * sp);
  return y;
}

double rad_dual_ratio(const BlockVec& x, const BlockVec& y, Exponent p) {
  const Exponent q = p.conjugate();
  double nrm = std::max(column_norm(y, q), row_norm(y, q));
  if (nrm <= 0) return 0.0;
  return std::abs(block_pairing(x, y)) / nrm;
}

RadBracket rad_norm_bracket(const BlockVec& x, Exponent p, const RadOptions& opts) {
  require_reflexive(p, "rad_norm_bracket");
  RadBracket out;
  const double col = column_norm(x, p);
  const double row = row_norm(x, p);
  if (p.value() >= 2.0) {
    out.lower = out.upper = std::max(col, row);
    out.converged = true;
    return out;
  }
  const double scale = x.frobenius_norm();
  if (scale == 0.0) {
    out.witness = x;
    out.converged = true;
    return out;
  }

  const double pv = p.value();
  BlockVec v = (row < col) ? x : BlockVec::zeros(x.size(), x.dim());
  BlockVec best_v = v;
  out.upper = std::min(col, row);

  double eps = 1e-2 * scale;
  const double eps_min = 1e-9 * scale;
  auto objective = [&](const BlockVec& vv, BlockVec* grad) {
    BlockVec gc, gr;
    double f = smoothed_column_norm(x - vv, pv, eps, grad ? &gc : nullptr) + smoothed_row_norm(vv, pv, eps, grad ? &gr : nullptr);
    if (grad) {
      *grad = gr;
      *grad -= gc;
    }
    return f;
  };

  // accelerated gradient with backtracking, function-value restart and a
  // continuation on the smoothing parameter
  BlockVec w = v, grad;
  double fv = objective(v, nullptr);
  double step = scale;
  double theta = 1.0;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    double fw = objective(w, &grad);
    double g2 = grad.real_dot(grad);
    BlockVec cand;
    double fc = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      cand = w;
      cand += (-step) * grad;
      fc = objective(cand, nullptr);
      if (fc <= fw - 0.5 * step * g2 || g2 == 0.0) break;
      step *= 0.5;
    }
    if (fc > fv) {
      // restart momentum from the last iterate
      w = v;
      theta = 1.0;
      step *= 0.5;
      if (step < 1e-18 * scale) break;
      continue;
    }
    double theta_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
    BlockVec next_w = cand;
    BlockVec diff = cand - v;
    next_w += ((theta - 1.0) / theta_next) * diff;
    v = std::move(cand);
    fv = fc;
    w = std::move(next_w);
    theta = theta_next;
    step *= 1.25;

    if (it % 25 == 24 || it + 1 == opts.max_iter) {
      double exact = exact_split(x, v, p);
      if (exact < out.upper) {
        out.upper = exact;
        best_v = v;
      }
      if (eps > eps_min) {
        eps = std::max(eps_min, eps * 0.3);
        fv = objective(v, nullptr);
        w = v;
        theta = 1.0;
      }
      if (opts.compute_lower) {
        out.lower = std::max(out.lower, certificate_lower(x, best_v, p));
        if (out.upper - out.lower <= opts.tol * out.upper) {
          out.converged = true;
          ++it;
          break;
        }
      }
    }
  }
  out.iterations = it;
  double exact = exact_split(x, v, p);
  if (exact < out.upper) {
    out.upper = exact;
    best_v = v;
  }
  out.witness = best_v;

  if (opts.compute_lower) {
    out.lower = std::max(out.lower, certificate_lower(x, best_v, p));
    Rng rng(opts.seed);
    for (int s = 0; s < opts.dual_starts; ++s) {
      Rng sub = rng.substream(static_cast<std::uint64_t>(s));
      std::vector<Mat> ys;
      for (std::size_t k = 0; k < x.size(); ++k) ys.push_back(sub.gaussian_matrix(x.dim(), x.dim()));
      out.lower = std::max(out.lower, dual_ascent(x, BlockVec(std::move(ys)), p, opts.dual_steps));
    }
    out.lower = std::min(out.lower, out.upper);
    out.converged = out.upper - out.lower <= opts.tol * out.upper;
  }
  return out;
}

bool duality_check(const BlockVec& x, const BlockVec& y, Exponent p, double slack) {
  require(x.size() == y.size() && x.dim() == y.dim(), ErrorCode::dimension_mismatch, "duality_check: shape mismatch");
  require_reflexive(p, "duality_check");
  return std::abs(block_pairing(x, y)) <= column_norm(x, p) * row_norm(y, p.conjugate()) + slack;
}

double regular_norm(const Eigen::MatrixXcd& c) {
  require(c.size() > 0 && c.allFinite(), ErrorCode::invalid_argument, "regular_norm: empty or non-finite");
  Mat a = c.cwiseAbs().cast<Complex>();
  return operator_norm(a);
}

BlockVec op_matrix_apply(const Eigen::MatrixXcd& c, const std::vector<std::vector<SuperOp>>& table,
                         const BlockVec& x) {
  const auto k = static_cast<std::size_t>(c.rows());
  require(c.rows() == c.cols() && k == x.size() && table.size() == k, ErrorCode::dimension_mismatch,
          "op_matrix_apply: shapes disagree");
  BlockVec y = BlockVec::zeros(k, x.dim());
  for (std::size_t i = 0; i < k; ++i) {
    require(table[i].size() == k, ErrorCode::dimension_mismatch, "op_matrix_apply: table is not square");
    for (std::size_t j = 0; j < k; ++j) {
      Complex cij = c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (cij == Complex(0.0)) continue;
      y[i] += cij * table[i][j].apply(x[j]);
    }
  }
  return y;
}

}  // namespace rittkit
