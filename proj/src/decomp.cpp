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

#include "rittkit/decomp.hpp"

#include <algorithm>
#include <cmath>

#include "rittkit/ritt.hpp"

namespace rittkit {

namespace {

// (I + T)^2 (I - T) y
Mat z_polynomial(const SuperOp& t, const Mat& y) {
  Mat w = y - t.apply(y);
  w += t.apply(w);
  w += t.apply(w);
  return w;
}

long reconstruction_k(const PowerBound& pb, double w_norm, double target) {
  if (w_norm == 0.0) return 1;
  for (long k = 16; k <= 10000000; k *= 2)
    if (tail_series(pb, 1.0, k, 2, 1.0) * w_norm <= target) return k;
  fail(ErrorCode::not_converged, "reconstruction: truncation length exceeds 1e7");
}

double schatten_ratio_constant(Eigen::Index n, Exponent p) {
  double inv = p.is_infinite() ? 0.0 : 1.0 / p.value();
  return std::pow(static_cast<double>(n), std::abs(inv - 0.5));
}

void require_injective(const SuperOp& t) {
  CVec ev = spectrum(t);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i) - 1.0) <= 1e-10) fail(ErrorCode::spectrum, "I - T is not injective at this truncation");
}

// Linear map x -> (k^(alpha - 1/2) T^(k-1) (I - T)^alpha x)_{k <= K} and
// its Frobenius adjoint.
struct SequenceMap {
  SuperOp t;
  SuperOp frac;
  double alpha;
  long k;

  SequenceMap(const SuperOp& op, double a, long len) : t(op), frac(fractional_power(op, a)), alpha(a), k(len) {}

  BlockVec apply(const Mat& x) const {
    std::vector<Mat> blocks;
    Mat cur = frac.apply(x);
    for (long j = 1; j <= k; ++j) {
      if (j > 1) cur = t.apply(cur);
      blocks.push_back(std::pow(static_cast<double>(j), alpha - 0.5) * cur);
    }
    return BlockVec(std::move(blocks));
  }

  Mat adjoint_apply(const BlockVec& g) const {
    Mat acc = Mat::Zero(t.dim(), t.dim());
    for (long j = k; j >= 1; --j) {
      if (j < k) acc = t.hilbert_adjoint_apply(acc);
      acc += std::pow(static_cast<double>(j), alpha - 0.5) * g[static_cast<std::size_t>(j - 1)];
    }
    return frac.hilbert_adjoint_apply(acc);
  }
};

BlockVec without_block(const BlockVec& seq, std::size_t skip) {
  std::vector<Mat> rest;
  for (std::size_t k = 0; k < seq.size(); ++k)
    if (k != skip) rest.push_back(seq[k]);
  if (rest.empty()) rest.push_back(Mat::Zero(seq.dim(), seq.dim()));
  return BlockVec(std::move(rest));
}

}  // namespace

BlockVec Z_apply(const SuperOp& t, const Mat& y, long k) {
  require(k >= 1, ErrorCode::invalid_argument, "Z_apply: K must be >= 1");
  const SuperOp ta = t.adjoint();
  Mat cur = z_polynomial(ta, y);
  std::vector<Mat> blocks;
  for (long j = 1; j <= k; ++j) {
    if (j > 1) cur = ta.apply(cur);
    blocks.push_back(std::sqrt(static_cast<double>(j)) * cur);
  }
  return BlockVec(std::move(blocks));
}

Mat Z_star_apply(const SuperOp& t, const BlockVec& u) {
  require(!u.empty() && u.dim() == t.dim(), ErrorCode::dimension_mismatch, "Z_star_apply: shape mismatch");
  Mat acc = Mat::Zero(t.dim(), t.dim());
  for (std::size_t j = u.size(); j >= 1; --j) {
    if (j < u.size()) acc = t.apply(acc);
    acc += std::sqrt(static_cast<double>(j)) * u[j - 1];
  }
  return z_polynomial(t, acc);
}

Mat reconstruct_identity(const SuperOp& t, const Mat& x, double rho, long k, double tol) {
  require(rho > 0.0, ErrorCode::invalid_argument, "reconstruct_identity: rho must be positive");
  require(x.rows() == t.dim() && x.cols() == t.dim(), ErrorCode::dimension_mismatch,
          "reconstruct_identity: x does not match the operator");
  const SuperOp s = rho == 1.0 ? t : scaled(t, rho);
  if (!(spectral_radius(s) < 1.0))
    fail(ErrorCode::spectrum, "reconstruct_identity: requires rho * spectral_radius(T) < 1");
  Mat w = x - s.apply(s.apply(x));
  w = w - s.apply(s.apply(w));
  if (k == 0) k = reconstruction_k(power_bound(s), w.norm(), tol * x.norm());
  Mat acc = Mat::Zero(x.rows(), x.cols());
  Mat cur = w;
  for (long j = 1; j <= k; ++j) {
    if (j > 1) cur = s.apply(s.apply(cur));
    acc += static_cast<double>(j) * cur;
  }
  return acc;
}

std::string to_string(Splitter s) {
  switch (s) {
    case Splitter::all_column: return "all-column";
    case Splitter::all_row: return "all-row";
    case Splitter::rad_optimal: return "rad-optimal";
    case Splitter::thresholded: return "thresholded";
  }
  return "rad-optimal";
}

Splitter splitter_from_string(const std::string& name) {
  for (Splitter s : {Splitter::all_column, Splitter::all_row, Splitter::rad_optimal, Splitter::thresholded})
    if (to_string(s) == name) return s;
  fail(ErrorCode::invalid_argument, "unknown splitter '" + name + "'");
}

DecompResult decompose(const SuperOp& t, const Mat& x, Exponent p, const DecompOptions& opts) {
  require(p.value() > 1.0 && !p.is_infinite(), ErrorCode::invalid_argument, "decompose: requires 1 < p < inf");
  require(x.rows() == t.dim() && x.cols() == t.dim(), ErrorCode::dimension_mismatch,
          "decompose: x does not match the operator");
  require(opts.tol > 0 && opts.k >= 0, ErrorCode::invalid_argument, "decompose: bad tolerance or K");
  require_injective(t);
  const PowerBound pb = power_bound(t);
  const double xnorm = schatten_norm(x, p);

  DecompResult out;
  long k = opts.k;
  if (k == 0) {
    Mat w = x - t.apply(t.apply(x));
    w = w - t.apply(t.apply(w));
    k = reconstruction_k(pb, w.norm(), opts.tol * x.norm() / schatten_ratio_constant(t.dim(), p));
  }
  out.k_used = k;

  SqSpec seq_spec;
  seq_spec.p = p;
  seq_spec.alpha = 1.0;
  const BlockVec seq = sq_sequence_fixed(t, x, seq_spec, k);
  BlockVec v = BlockVec::zeros(seq.size(), seq.dim());

  switch (opts.splitter) {
    case Splitter::all_column: break;
    case Splitter::all_row: v = seq; break;
    case Splitter::rad_optimal:
      if (p.value() >= 2.0) {
        if (row_norm(seq, p) < column_norm(seq, p)) v = seq;
      } else if (xnorm > 0) {
        PrefixRad pr = rad_prefix_bracket(seq, p, opts.rad);
        for (std::size_t j = 0; j < pr.prefix; ++j) v[j] = (*pr.bracket.witness)[j];
        const double split = column_norm(seq - v, p) + row_norm(v, p);
        const double col = column_norm(seq, p), row = row_norm(seq, p);
        if (col <= std::min(split, row))
          v = BlockVec::zeros(seq.size(), seq.dim());
        else if (row < split)
          v = seq;
      }
      break;
    case Splitter::thresholded: {
      // each block goes to the side whose norm it increases least
      const double c = column_norm(seq, p), r = row_norm(seq, p);
      for (std::size_t j = 0; j < seq.size(); ++j) {
        BlockVec rest = without_block(seq, j);
        double dc = c - column_norm(rest, p), dr = r - row_norm(rest, p);
        if (dr < dc) v[j] = seq[j];
      }
      break;
    }
  }
  const BlockVec u = seq - v;
  out.x1 = Z_star_apply(t, u);
  out.x2 = Z_star_apply(t, v);

  SqSpec col_spec;
  col_spec.p = p;
  col_spec.alpha = opts.alpha;
  col_spec.kind = SqKind::col;
  SqSpec row_spec = col_spec;
  row_spec.kind = SqKind::row;
  out.col_sq = square_function(t, out.x1, col_spec).value;
  out.row_sq = square_function(t, out.x2, row_spec).value;
  if (xnorm > 0) {
    out.constant = (out.col_sq + out.row_sq) / xnorm;
    out.residual = schatten_norm(x - out.x1 - out.x2, p) / xnorm;
  }
  return out;
}

double hankel_regular_check(int k) {
  require(k >= 1, ErrorCode::invalid_argument, "hankel_regular_check: K must be >= 1");
  Mat c(k, k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j) {
      double d = static_cast<double>(i + j - 1);
      c(i - 1, j - 1) = std::sqrt(static_cast<double>(i) * j) / (d * d);
    }
  return regular_norm(c);
}

SqResult split_square_function(const SuperOp& t, const Mat& x, const SqSpec& spec) {
  const Exponent p = spec.p;
  require(p.value() > 1.0 && !p.is_infinite(), ErrorCode::invalid_argument,
          "split square function: requires 1 < p < inf");
  SqSpec col_spec = spec;
  col_spec.kind = SqKind::col;
  SqSpec row_spec = spec;
  row_spec.kind = SqKind::row;

  SqResult out;
  const BlockVec seq = sq_sequence(t, x, col_spec);
  const long k = static_cast<long>(seq.size());
  out.k_used = k;
  const double tail_x = sq_tail_bound(t, x, col_spec, k);
  out.converged = tail_x <= spec.tol * seq.frobenius_norm() || tail_x == 0.0;
  if (x.norm() == 0.0) {
    out.converged = true;
    return out;
  }

  if (p.value() >= 2.0) {
    out.lower = std::max(column_norm(seq, p), row_norm(seq, p));
  } else {
    out.lower = std::max(0.0, rad_prefix_bracket(seq, p, spec.rad).bracket.lower);
  }

  const SuperOp s = spec.rho == 1.0 ? t : scaled(t, spec.rho);
  const SequenceMap map(s, spec.alpha, k);
  auto exact = [&](const Mat& x2) {
    return column_norm(map.apply(x - x2), p) + row_norm(map.apply(x2), p);
  };

  DecompOptions dopts;
  dopts.tol = std::max(spec.tol, 1e-10);
  Mat best = decompose(s, x, p, dopts).x2;
  double best_val = exact(best);
  // the two one-sided splits are always admissible
  const Mat one_sided[] = {Mat::Zero(x.rows(), x.cols()), x};
  for (const Mat& cand : one_sided) {
    double v = exact(cand);
    if (v < best_val) {
      best_val = v;
      best = cand;
    }
  }

  const double eps = 1e-6 * x.norm();
  Mat x2 = best;
  double step = 0.1 * x.norm();
  for (int it = 0; it < 50 && step > 1e-14 * x.norm(); ++it) {
    BlockVec gc, gr;
    smoothed_column_norm(map.apply(x - x2), p.value(), eps, &gc);
    smoothed_row_norm(map.apply(x2), p.value(), eps, &gr);
    Mat g = map.adjoint_apply(gr) - map.adjoint_apply(gc);
    double gn = g.norm();
    if (gn == 0.0) break;
    bool moved = false;
    while (step > 1e-14 * x.norm()) {
      Mat trial = x2 - (step / gn) * g;
      double v = exact(trial);
      if (v < best_val) {
        best_val = v;
        best = trial;
        x2 = std::move(trial);
        step *= 1.5;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }

  out.value = best_val;
  out.tail_bound = sq_tail_bound(t, x - best, col_spec, k) + sq_tail_bound(t, best, row_spec, k);
  out.upper = out.value + out.tail_bound;
  out.lower = std::min(out.lower, out.upper);
  return out;
}

}  // namespace rittkit
