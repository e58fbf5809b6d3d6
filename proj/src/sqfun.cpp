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

#include "rittkit/sqfun.hpp"

#include <algorithm>
#include <cmath>

#include "rittkit/decomp.hpp"
#include "rittkit/ritt.hpp"
#include "rittkit/rng.hpp"

namespace rittkit {

std::string to_string(SqKind kind) {
  switch (kind) {
    case SqKind::col: return "col";
    case SqKind::row: return "row";
    case SqKind::rad: return "rad";
    case SqKind::split: return "split";
  }
  return "col";
}

SqKind sq_kind_from_string(const std::string& name) {
  if (name == "col") return SqKind::col;
  if (name == "row") return SqKind::row;
  if (name == "rad") return SqKind::rad;
  if (name == "split") return SqKind::split;
  fail(ErrorCode::invalid_argument, "unknown square function kind '" + name + "'");
}

namespace {

bool is_normal(const Mat& g) {
  double scale = std::max(1.0, g.squaredNorm());
  return (g * g.adjoint() - g.adjoint() * g).norm() <= 1e-12 * scale;
}

// Matrix whose 2-norm powers control ||S^j||_{S^2 -> S^2}.
Mat power_carrier(const SuperOp& s) {
  if (s.is_multiplication()) return s.factor();
  if (s.kind() == SuperOp::Kind::schur) return vec(s.factor()).asDiagonal();
  return s.as_matrix();
}

void check_spec(const SqSpec& spec) {
  require(spec.alpha > 0 && std::isfinite(spec.alpha), ErrorCode::invalid_argument, "square function: alpha must be > 0");
  require(spec.k_max >= 1, ErrorCode::invalid_argument, "square function: K_max must be >= 1");
  require(spec.tol > 0, ErrorCode::invalid_argument, "square function: tol must be > 0");
  require(spec.rho > 0 && spec.rho <= 1, ErrorCode::invalid_argument, "square function: rho must lie in (0, 1]");
}

struct Prepared {
  SuperOp s;
  PowerBound pb;
  Mat y;  // (I - S)^alpha x
};

Prepared prepare(const SuperOp& t, const Mat& x, const SqSpec& spec) {
  check_spec(spec);
  require(x.rows() == t.dim() && x.cols() == t.dim(), ErrorCode::dimension_mismatch,
          "square function: x does not match the operator");
  SuperOp s = spec.rho == 1.0 ? t : scaled(t, spec.rho);
  PowerBound pb = power_bound(s);
  Mat y = fractional_power(s, spec.alpha).apply(x);
  return {std::move(s), pb, std::move(y)};
}

double tail_of(const Prepared& pr, const SqSpec& spec, long k) {
  double series = tail_series(pr.pb, 2.0 * spec.alpha - 1.0, k, 1, 2.0);
  return schatten_two_constant(pr.y.rows(), spec.p) * std::sqrt(series) * pr.y.norm();
}

void extend(const Prepared& pr, const SqSpec& spec, std::vector<Mat>& blocks, Mat& cur, long k) {
  if (blocks.empty()) cur = pr.y;
  for (long j = static_cast<long>(blocks.size()) + 1; j <= k; ++j) {
    if (j > 1) cur = pr.s.apply(cur);
    blocks.push_back(std::pow(static_cast<double>(j), spec.alpha - 0.5) * cur);
  }
}

// Cheap certified lower estimate of the value used by the stopping rule.
double policy_value(const BlockVec& seq, const SqSpec& spec) {
  switch (spec.kind) {
    case SqKind::col: return column_norm(seq, spec.p);
    case SqKind::row: return row_norm(seq, spec.p);
    default:
      if (spec.p.value() >= 2.0) return std::max(column_norm(seq, spec.p), row_norm(seq, spec.p));
      // for p <= 2 both column and row norms dominate the Frobenius norm,
      // hence so does any split
      return seq.frobenius_norm();
  }
}

struct Truncated {
  BlockVec seq;
  double tail = 0.0;
  bool converged = false;
};

Truncated truncate(const Prepared& pr, const SqSpec& spec) {
  std::vector<Mat> blocks;
  Mat cur;
  long k = std::min<long>(64, spec.k_max);
  for (;;) {
    extend(pr, spec, blocks, cur, k);
    Truncated out;
    out.seq = BlockVec(blocks);
    out.tail = tail_of(pr, spec, k);
    double v = policy_value(out.seq, spec);
    out.converged = out.tail <= spec.tol * v || out.tail == 0.0;
    if (out.converged || k >= spec.k_max) return out;
    k = std::min(2 * k, spec.k_max);
  }
}

}  // namespace

PowerBound power_bound(const SuperOp& s) {
  double r = spectral_radius(s);
  if (!(r < 1.0))
    fail(ErrorCode::spectrum, "no certified tail: spectral radius of rho T is >= 1; supply rho < 1 or a closed form");
  Mat g = power_carrier(s);
  if (is_normal(g)) return {1.0, std::min(1.0, r * (1.0 + 1e-12)), 1};
  PowerBound pb;
  Mat pw = g;
  for (int it = 0; it < 62; ++it) {
    double nrm = operator_norm(pw);
    if (nrm < 0.5) {
      pb.q = nrm;
      return pb;
    }
    pb.b *= std::max(1.0, nrm);
    pw = (pw * pw).eval();
    pb.m *= 2;
  }
  fail(ErrorCode::not_converged, "power_bound: powers do not contract");
}

double tail_series(const PowerBound& pb, double beta, long k, int stride, double power) {
  require(k >= 0 && stride >= 1, ErrorCode::invalid_argument, "tail_series: bad arguments");
  const double bp = std::pow(pb.b, power);
  if (pb.q == 0.0) {
    double acc = 0.0;
    for (long j = k + 1; static_cast<double>(stride) * (j - 1) < static_cast<double>(pb.m); ++j)
      acc += std::pow(static_cast<double>(j), beta) * bp;
    return acc;
  }
  const double m = static_cast<double>(pb.m);
  // q^floor(i/m) <= q^(i/m - (m-1)/m)
  const double pre = bp * std::pow(pb.q, -power * (m - 1.0) / m);
  const double r = std::pow(pb.q, power * stride / m);
  const double kk = static_cast<double>(k);
  const double c = std::pow((kk + 2.0) / (kk + 1.0), std::max(beta, 0.0)) * r;
  if (!(c < 1.0)) return kInf;
  const double first = std::pow(kk + 1.0, beta) * std::pow(r, kk);
  return pre * first / (1.0 - c);
}

Complex derivative_geometric_sum(Complex z, double tol) {
  const double r = std::abs(z);
  require(r < 1.0, ErrorCode::invalid_argument, "derivative_geometric_sum: requires |z| < 1");
  const PowerBound pb{1.0, r, 1};
  Complex acc = 0.0, zk = 1.0;
  for (long k = 1;; ++k) {
    acc += static_cast<double>(k) * zk;
    zk *= z;
    if (tail_series(pb, 1.0, k, 1, 1.0) <= tol * std::abs(acc)) return acc;
  }
}

Complex reconstruction_scalar_sum(Complex z, double tol) {
  const double r = std::abs(z);
  require(r < 1.0, ErrorCode::invalid_argument, "reconstruction_scalar_sum: requires |z| < 1");
  const PowerBound pb{1.0, r, 1};
  const Complex w = (1.0 - z * z) * (1.0 - z * z);
  Complex acc = 0.0, zk = 1.0;
  for (long k = 1;; ++k) {
    acc += static_cast<double>(k) * zk * w;
    zk *= z * z;
    if (tail_series(pb, 1.0, k, 2, 1.0) * std::abs(w) <= tol * std::abs(acc)) return acc;
  }
}

double schatten_two_constant(Eigen::Index n, Exponent p) {
  double inv = p.is_infinite() ? 0.0 : 1.0 / p.value();
  return std::max(1.0, std::pow(static_cast<double>(n), inv - 0.5));
}

BlockVec sq_sequence(const SuperOp& t, const Mat& x, const SqSpec& spec) {
  return truncate(prepare(t, x, spec), spec).seq;
}

BlockVec sq_sequence_fixed(const SuperOp& t, const Mat& x, const SqSpec& spec, long k) {
  require(k >= 1, ErrorCode::invalid_argument, "sq_sequence_fixed: k must be >= 1");
  check_spec(spec);
  require(x.rows() == t.dim() && x.cols() == t.dim(), ErrorCode::dimension_mismatch,
          "square function: x does not match the operator");
  SuperOp s = spec.rho == 1.0 ? t : scaled(t, spec.rho);
  Prepared pr{s, PowerBound{}, fractional_power(s, spec.alpha).apply(x)};
  std::vector<Mat> blocks;
  Mat cur;
  extend(pr, spec, blocks, cur, k);
  return BlockVec(std::move(blocks));
}

double sq_tail_bound(const SuperOp& t, const Mat& x, const SqSpec& spec, long k) {
  return tail_of(prepare(t, x, spec), spec, k);
}

PrefixRad rad_prefix_bracket(const BlockVec& seq, Exponent p, const RadOptions& opts, double energy_tol,
                             std::size_t cap) {
  require(!seq.empty(), ErrorCode::invalid_argument, "rad_prefix_bracket: empty sequence");
  std::vector<double> energy(seq.size());
  for (std::size_t k = 0; k < seq.size(); ++k) energy[k] = seq[k].squaredNorm();
  double total = 0.0;
  for (double e : energy) total += e;
  // smallest prefix whose complement carries at most energy_tol of the mass
  std::size_t prefix = seq.size();
  double rest = 0.0;
  while (prefix > 1 && rest + energy[prefix - 1] <= energy_tol * total) rest += energy[--prefix];
  prefix = std::min(prefix, std::max<std::size_t>(cap, 1));

  PrefixRad out;
  out.prefix = prefix;
  BlockVec head(std::vector<Mat>(seq.blocks().begin(), seq.blocks().begin() + static_cast<long>(prefix)));
  out.bracket = rad_norm_bracket(head, p, opts);
  if (prefix < seq.size()) {
    BlockVec tail(std::vector<Mat>(seq.blocks().begin() + static_cast<long>(prefix), seq.blocks().end()));
    out.rest_column = column_norm(tail, p);
  }
  return out;
}

SqResult square_function(const SuperOp& t, const Mat& x, const SqSpec& spec) {
  if (spec.kind == SqKind::split) return split_square_function(t, x, spec);
  Prepared pr = prepare(t, x, spec);
  Truncated tr = truncate(pr, spec);
  SqResult out;
  out.k_used = static_cast<long>(tr.seq.size());
  out.tail_bound = tr.tail;
  out.converged = tr.converged;
  switch (spec.kind) {
    case SqKind::col: out.value = out.lower = column_norm(tr.seq, spec.p); break;
    case SqKind::row: out.value = out.lower = row_norm(tr.seq, spec.p); break;
    default:
      if (spec.p.value() >= 2.0) {
        out.value = out.lower = std::max(column_norm(tr.seq, spec.p), row_norm(tr.seq, spec.p));
      } else {
        PrefixRad pr_rad = rad_prefix_bracket(tr.seq, spec.p, spec.rad);
        // the one-sided splits of the whole sequence are admissible too
        out.value = std::min({pr_rad.upper(), column_norm(tr.seq, spec.p), row_norm(tr.seq, spec.p)});
        out.lower = pr_rad.bracket.lower;
        out.converged = out.converged && pr_rad.bracket.converged;
      }
      break;
  }
  out.upper = out.value + out.tail_bound;
  return out;
}

AlphaExperiment alpha_equivalence_experiment(const SuperOp& t, Exponent p, const std::vector<double>& alphas,
                                             SqKind kind, int samples, std::uint64_t seed, double rho) {
  require(!alphas.empty(), ErrorCode::invalid_argument, "alpha_equivalence_experiment: no alphas");
  require(samples >= 1, ErrorCode::invalid_argument, "alpha_equivalence_experiment: samples must be >= 1");
  AlphaExperiment out;
  out.alphas = alphas;
  for (int s = 0; s < samples; ++s) {
    Rng rng(seed, static_cast<std::uint64_t>(s));
    Mat x = rng.gaussian_matrix(t.dim(), t.dim());
    x /= schatten_norm(x, p);
    std::vector<double> vals;
    for (double a : alphas) {
      SqSpec spec;
      spec.p = p;
      spec.alpha = a;
      spec.kind = kind;
      spec.rho = rho;
      vals.push_back(square_function(t, x, spec).value);
    }
    std::vector<std::vector<double>> r(alphas.size(), std::vector<double>(alphas.size(), 1.0));
    for (std::size_t i = 0; i < alphas.size(); ++i)
      for (std::size_t j = 0; j < alphas.size(); ++j) {
        r[i][j] = vals[i] / vals[j];
        out.max_spread = std::max(out.max_spread, r[i][j]);
      }
    out.ratios.push_back(std::move(r));
  }
  return out;
}

}  // namespace rittkit
