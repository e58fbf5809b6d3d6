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

#include "rittkit/ritt.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rittkit/blocknorm.hpp"
#include "rittkit/rng.hpp"

namespace rittkit {

Complex eval_polynomial(const Polynomial& phi, Complex z) {
  Complex acc = 0.0;
  for (std::size_t k = phi.size(); k-- > 0;) acc = acc * z + phi[k];
  return acc;
}

StolzDomain::StolzDomain(double gamma) : gamma_(gamma), s_(std::sin(gamma)) {
  require(gamma > 0.0 && gamma < M_PI / 2, ErrorCode::invalid_argument, "StolzDomain: gamma must lie in (0, pi/2)");
}

Complex StolzDomain::upper_tangent() const { return std::polar(s_, std::acos(s_)); }

Complex StolzDomain::lower_tangent() const { return std::polar(s_, -std::acos(s_)); }

bool StolzDomain::contains(Complex z) const {
  if (std::abs(z) < s_) return true;
  auto cross = [](Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); };
  // counterclockwise triangle 1 -> t+ -> t-
  const Complex a = 1.0, b = upper_tangent(), c = lower_tangent();
  return cross(b - a, z - a) > 0 && cross(c - b, z - b) > 0 && cross(a - c, z - c) > 0;
}

bool stolz_membership(Complex z, const StolzDomain& d) { return d.contains(z); }

namespace {

constexpr double kAngleTol = 1e-3;

bool is_one(Complex z) { return std::abs(z - 1.0) <= 1e-12; }

std::vector<Complex> spectrum_list(const SuperOp& t) {
  CVec ev = spectrum(t);
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

// w with Tr(y w) = ||y||_p and ||w||_{p*} = 1.
Mat dual_norming(const Mat& y, Exponent p) {
  Eigen::JacobiSVD<Mat> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVec& s = svd.singularValues();
  const Mat& u = svd.matrixU();
  const Mat& v = svd.matrixV();
  const Eigen::Index n = s.size();
  RVec d = RVec::Zero(n);
  if (s.size() == 0 || s(0) <= 0) return Mat::Zero(y.cols(), y.rows());
  if (p.is_infinite()) {
    d(0) = 1.0;
  } else if (p.value() == 1.0) {
    for (Eigen::Index i = 0; i < n; ++i) d(i) = s(i) > 1e-14 * s(0) ? 1.0 : 0.0;
  } else {
    const double pv = p.value();
    double nrm = schatten_norm_of(s / s(0), p);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::pow(s(i) / s(0), pv - 1) / std::pow(nrm, pv - 1);
  }
  return v * d.asDiagonal() * u.adjoint();
}

// Boyd's nonlinear power method; every iterate gives a valid lower bound.
double power_method_lower(const SuperOp& t, Exponent p, const NormOptions& opts) {
  const Exponent q = p.conjugate();
  const SuperOp ta = t.adjoint();
  const Eigen::Index n = t.dim();
  double best = 0.0;
  Rng rng(opts.seed);
  for (int st = 0; st < opts.starts; ++st) {
    Mat x = st == 0 ? Mat::Identity(n, n) : rng.substream(static_cast<std::uint64_t>(st)).gaussian_matrix(n, n);
    x /= schatten_norm(x, p);
    double prev = -1.0;
    for (int it = 0; it < opts.steps; ++it) {
      Mat y = t.apply(x);
      double val = schatten_norm(y, p) / schatten_norm(x, p);
      best = std::max(best, val);
      if (val == 0.0 || std::abs(val - prev) <= 1e-13 * val) break;
      prev = val;
      Mat z = ta.apply(dual_norming(y, p));
      if (z.norm() == 0.0) break;
      x = dual_norming(z, q);
    }
  }
  return best;
}

bool completely_positive(const SuperOp& t) {
  Mat c = choi_matrix(t);
  Mat h = 0.5 * (c + c.adjoint());
  if ((c - h).norm() > 1e-12 * std::max(1.0, c.norm())) return false;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -1e-12 * std::max(1.0, c.norm());
}

struct UpperResult {
  double value;
  bool exact;
};

UpperResult norm_upper(const SuperOp& t, Exponent p) {
  require(p.value() >= 1.0, ErrorCode::invalid_argument, "operator norm: requires p >= 1");
  using K = SuperOp::Kind;
  if (t.is_multiplication()) return {operator_norm(t.factor()), true};
  double u2 = t.kind() == K::schur ? t.factor().cwiseAbs().maxCoeff() : operator_norm(t.as_matrix());
  if (p.value() == 2.0) return {u2, true};
  const double n = static_cast<double>(t.dim());
  const double inv = p.is_infinite() ? 0.0 : 1.0 / p.value();
  double u1 = std::sqrt(n) * u2, uinf = std::sqrt(n) * u2;
  bool cp = completely_positive(t);
  if (cp) {
    const Mat id = Mat::Identity(t.dim(), t.dim());
    uinf = operator_norm(t.apply(id));
    u1 = operator_norm(t.adjoint().apply(id));
  }
  if (t.kind() == K::unitary_mixture) {
    double wsum = 0.0;
    for (double w : t.mixture_weights()) wsum += std::abs(w);
    u1 = std::min(u1, wsum);
    uinf = std::min(uinf, wsum);
  }
  if (p.is_infinite()) return {uinf, cp};
  if (p.value() == 1.0) return {u1, cp};
  double best = std::pow(n, std::abs(inv - 0.5)) * u2;
  best = std::min(best, std::pow(u1, inv) * std::pow(uinf, 1.0 - inv));
  if (inv > 0.5) {
    double th = 2.0 * (1.0 - inv);
    best = std::min(best, std::pow(u1, 1.0 - th) * std::pow(u2, th));
  } else {
    double th = 1.0 - 2.0 * inv;
    best = std::min(best, std::pow(u2, 1.0 - th) * std::pow(uinf, th));
  }
  return {best, false};
}

SuperOp identity_like(const SuperOp& t) {
  const Eigen::Index n = t.dim();
  switch (t.kind()) {
    case SuperOp::Kind::left_mult: return SuperOp::left_mult(Mat::Identity(n, n));
    case SuperOp::Kind::right_mult: return SuperOp::right_mult(Mat::Identity(n, n));
    case SuperOp::Kind::schur: return SuperOp::schur(Mat::Ones(n, n));
    default: return SuperOp::from_matrix(Mat::Identity(n * n, n * n));
  }
}

SuperOp structured(const SuperOp& t) {
  if (t.kind() == SuperOp::Kind::unitary_mixture) return SuperOp::from_matrix(t.as_matrix());
  return t;
}

// R(lambda, T) = (lambda - T)^{-1}
SuperOp resolvent_op(const SuperOp& t, Complex lambda) {
  const Eigen::Index n = t.dim();
  switch (t.kind()) {
    case SuperOp::Kind::left_mult:
      return SuperOp::left_mult((lambda * Mat::Identity(n, n) - t.factor()).inverse());
    case SuperOp::Kind::right_mult:
      return SuperOp::right_mult((lambda * Mat::Identity(n, n) - t.factor()).inverse());
    case SuperOp::Kind::schur:
      return SuperOp::schur(t.factor().unaryExpr([&](Complex m) { return 1.0 / (lambda - m); }));
    default: {
      Mat m = t.as_matrix();
      return SuperOp::from_matrix((lambda * Mat::Identity(m.rows(), m.cols()) - m).inverse());
    }
  }
}

double distance_to(const std::vector<Complex>& pts, Complex z) {
  double d = kInf;
  for (Complex w : pts) d = std::min(d, std::abs(z - w));
  return d;
}

// P_n(z) and P_{n-1}(z) by the three-term recurrence.
std::pair<double, double> legendre(int n, double z) {
  double p0 = 1.0, p1 = z;
  for (int k = 2; k <= n; ++k) {
    double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [pn, pm] = legendre(n, z);
      double dz = pn / (n * (z * pn - pm) / (z * z - 1.0));
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    auto [pn, pm] = legendre(n, z);
    double dp = n * (z * pn - pm) / (z * z - 1.0);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

struct Piece {
  std::function<Complex(double)> z;   // parametrization on [0, 1]
  std::function<double(double)> speed;  // |z'(t)|
  int nodes;
};

class Integrator {
 public:
  Integrator(std::function<double(Complex)> f, std::vector<Complex> spec)
      : f_(std::move(f)), spec_(std::move(spec)) {}

  QuadratureResult integrate(const Piece& piece, double rel_tol) {
    if (piece.nodes != nodes_) {
      gauss_legendre(piece.nodes, x1_, w1_);
      nodes_ = piece.nodes;
    }
    QuadratureResult total;
    double coarse = rule(piece, 0.0, 1.0);
    tol_ = rel_tol * std::max(std::abs(coarse), 1e-300);
    panels_ = 0;
    recurse(piece, 0.0, 1.0, coarse, 0, total);
    return total;
  }

 private:
  double rule(const Piece& piece, double a, double b) {
    double h = 0.5 * (b - a), mid = 0.5 * (a + b), acc = 0.0;
    for (int i = 0; i < nodes_; ++i) {
      double t = mid + h * x1_[i];
      acc += w1_[i] * f_(piece.z(t)) * piece.speed(t);
    }
    return acc * h;
  }

  void recurse(const Piece& piece, double a, double b, double whole, int depth, QuadratureResult& out) {
    double m = 0.5 * (a + b);
    double left = rule(piece, a, m), right = rule(piece, m, b);
    double err = std::abs(left + right - whole);
    // a panel is also split when it is long compared to its distance from
    // the spectrum, where the integrand is nearly singular
    double len = std::abs(piece.z(b) - piece.z(a));
    double dist = distance_to(spec_, piece.z(m));
    bool near = len > dist;
    if ((err <= tol_ * (b - a) && !near) || depth >= 40 || panels_ > 20000) {
      out.bound += left + right;
      out.error += err;
      ++panels_;
      return;
    }
    recurse(piece, a, m, left, depth + 1, out);
    recurse(piece, m, b, right, depth + 1, out);
  }

  std::function<double(Complex)> f_;
  std::vector<Complex> spec_;
  std::vector<double> x1_, w1_;
  int nodes_ = 0;
  double tol_ = 0.0;
  int panels_ = 0;
};

double boundary_sup_upper(const StolzDomain& d, const Polynomial& phi) {
  // samples on arc and both segments (the closed, un-notched boundary)
  const int per_piece = 512;
  const double phi0 = std::acos(d.radius());
  const Complex tp = d.upper_tangent(), tm = d.lower_tangent();
  double best = 0.0;
  double h = 0.0;
  const double arc_step = d.radius() * (2 * M_PI - 2 * phi0) / per_piece;
  for (int i = 0; i <= per_piece; ++i) {
    double ang = phi0 + (2 * M_PI - 2 * phi0) * i / per_piece;
    best = std::max(best, std::abs(eval_polynomial(phi, std::polar(d.radius(), ang))));
  }
  h = std::max(h, arc_step);
  for (Complex end : {tp, tm}) {
    for (int i = 0; i <= per_piece; ++i) {
      Complex z = end + (Complex(1.0) - end) * (static_cast<double>(i) / per_piece);
      best = std::max(best, std::abs(eval_polynomial(phi, z)));
    }
    h = std::max(h, std::abs(Complex(1.0) - end) / per_piece);
  }
  double lip = 0.0;
  for (std::size_t k = 1; k < phi.size(); ++k) lip += static_cast<double>(k) * std::abs(phi[k]);
  return best + 0.5 * lip * h;
}

}  // namespace

std::optional<double> min_stolz_angle(const SuperOp& t, double margin) {
  require(margin > 0.0, ErrorCode::invalid_argument, "min_stolz_angle: margin must be positive");
  std::vector<Complex> pts;
  for (Complex z : spectrum_list(t))
    if (!is_one(z)) pts.push_back(z);
  for (Complex z : pts)
    if (std::abs(z) >= 1.0) return std::nullopt;
  auto all_in = [&](double g) {
    StolzDomain d(g);
    return std::all_of(pts.begin(), pts.end(), [&](Complex z) { return d.contains(z); });
  };
  double lo = 0.0, hi = M_PI / 2 - 1e-9;
  if (!all_in(hi)) return std::nullopt;
  while (hi - lo > kAngleTol) {
    double mid = 0.5 * (lo + hi);
    if (all_in(mid))
      hi = mid;
    else
      lo = mid;
  }
  double g = hi + margin;
  if (g >= M_PI / 2) return std::nullopt;
  return g;
}

SuperOp fractional_power(const SuperOp& t, double alpha) {
  require(alpha > 0.0 && std::isfinite(alpha), ErrorCode::invalid_argument, "fractional_power: alpha must be positive");
  const ScalarFunction f = ScalarFunction::one_minus_power(alpha);
  switch (t.kind()) {
    case SuperOp::Kind::left_mult: return SuperOp::left_mult(primary_matrix_function(t.factor(), f).value);
    case SuperOp::Kind::right_mult: return SuperOp::right_mult(primary_matrix_function(t.factor(), f).value);
    case SuperOp::Kind::schur: {
      Mat out = t.factor();
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
          Mat z(1, 1);
          z(0, 0) = out(i, j);
          out(i, j) = primary_matrix_function(z, f).value(0, 0);
        }
      return SuperOp::schur(std::move(out));
    }
    default: return SuperOp::from_matrix(primary_matrix_function(t.as_matrix(), f).value);
  }
}

NormBracket operator_norm_bracket(const SuperOp& t, Exponent p, const NormOptions& opts) {
  UpperResult up = norm_upper(t, p);
  if (up.exact) return {up.value, up.value};
  double lower = power_method_lower(t, p, opts);
  return {std::min(lower, up.value), up.value};
}

RittReport ritt_constants(const SuperOp& t0, int n_max, Exponent p, const RittOptions& opts) {
  require(n_max >= 1, ErrorCode::invalid_argument, "ritt_constants: n_max must be >= 1");
  require(opts.theta_points >= 1, ErrorCode::invalid_argument, "ritt_constants: empty angle grid");
  const SuperOp t = structured(t0);
  RittReport rep;
  rep.n_max = n_max;
  rep.spectral_radius = spectral_radius(t);
  // T^0 = I has norm 1 on every S^p
  rep.power_bound = rep.power_lower = 1.0;

  const SuperOp diff = add(t, scaled(identity_like(t), -1.0));
  SuperOp prev = identity_like(t);
  for (int k = 1; k <= n_max; ++k) {
    SuperOp d = compose(prev, diff);
    SuperOp cur = compose(t, prev);
    NormBracket pb = operator_norm_bracket(cur, p, opts.norm);
    NormBracket db = operator_norm_bracket(d, p, opts.norm);
    rep.exact = rep.exact && pb.exact() && db.exact();
    rep.power_bound = std::max(rep.power_bound, pb.upper);
    rep.power_lower = std::max(rep.power_lower, pb.lower);
    if (k * db.upper > rep.diff_bound) {
      rep.diff_bound = k * db.upper;
      rep.diff_argmax = k;
    }
    rep.diff_lower = std::max(rep.diff_lower, k * db.lower);
    prev = std::move(cur);
  }

  const std::vector<Complex> spec = spectrum_list(t);
  for (double r : opts.radii) {
    for (int j = 0; j < opts.theta_points; ++j) {
      Complex lambda = 1.0 + std::polar(r, 2.0 * M_PI * j / opts.theta_points);
      if (std::abs(lambda) <= 1.0) continue;
      ++rep.grid_points;
      if (distance_to(spec, lambda) <= 1e-12 * std::max(1.0, std::abs(lambda))) {
        ++rep.flagged_points;
        continue;
      }
      NormBracket rb = operator_norm_bracket(resolvent_op(t, lambda), p, opts.norm);
      rep.exact = rep.exact && rb.exact();
      rep.resolvent_bound = std::max(rep.resolvent_bound, r * rb.upper);
      rep.resolvent_lower = std::max(rep.resolvent_lower, r * rb.lower);
    }
  }
  return rep;
}

namespace {

double family_sample(const std::vector<SuperOp>& family, Exponent p, int trials, std::uint64_t seed, bool column) {
  require(!family.empty(), ErrorCode::invalid_argument, "bound sample: empty family");
  require(trials >= 1, ErrorCode::invalid_argument, "bound sample: trials must be >= 1");
  const Eigen::Index n = family.front().dim();
  for (const SuperOp& t : family)
    require(t.dim() == n, ErrorCode::dimension_mismatch, "bound sample: mixed dimensions");
  double best = 0.0;
  for (int tr = 0; tr < trials; ++tr) {
    Rng rng(seed, static_cast<std::uint64_t>(tr));
    std::size_t len = 1 + rng.next() % 8;
    std::vector<Mat> xs, ys;
    for (std::size_t k = 0; k < len; ++k) {
      const SuperOp& t = family[rng.next() % family.size()];
      xs.push_back(rng.gaussian_matrix(n, n));
      ys.push_back(t.apply(xs.back()));
    }
    BlockVec x(std::move(xs)), y(std::move(ys));
    double num = column ? column_norm(y, p) : row_norm(y, p);
    double den = column ? column_norm(x, p) : row_norm(x, p);
    if (den > 0) best = std::max(best, num / den);
  }
  return best;
}

}  // namespace

double col_bound_sample(const std::vector<SuperOp>& family, Exponent p, int trials, std::uint64_t seed) {
  return family_sample(family, p, trials, seed, true);
}

double row_bound_sample(const std::vector<SuperOp>& family, Exponent p, int trials, std::uint64_t seed) {
  return family_sample(family, p, trials, seed, false);
}

QuadratureResult fc_upper_bound(const SuperOp& t0, const StolzDomain& d, const Polynomial& phi, Exponent p, int nodes,
                                double notch) {
  require(nodes >= 2, ErrorCode::invalid_argument, "fc_upper_bound: need at least two nodes");
  require(notch > 0.0 && notch < 0.5, ErrorCode::invalid_argument, "fc_upper_bound: notch radius out of range");
  const SuperOp t = structured(t0);
  const std::vector<Complex> spec = spectrum_list(t);
  for (Complex z : spec) {
    if (is_one(z)) fail(ErrorCode::spectrum, "fc_upper_bound: eigenvalue 1 is not supported");
    if (!d.contains(z) || std::abs(z - 1.0) <= notch)
      fail(ErrorCode::spectrum, "fc_upper_bound: spectrum is not inside the notched contour");
  }
  auto integrand = [&](Complex z) {
    double ph = std::abs(eval_polynomial(phi, z));
    if (ph == 0.0) return 0.0;
    return ph * norm_upper(resolvent_op(t, z), p).value / (2.0 * M_PI);
  };

  const double s = d.radius(), g = d.gamma();
  const double phi0 = std::acos(s);
  const Complex tp = d.upper_tangent(), tm = d.lower_tangent();
  const Complex np = 1.0 + std::polar(notch, M_PI - g), nm = 1.0 + std::polar(notch, M_PI + g);
  std::vector<Piece> pieces;
  pieces.push_back({[=](double u) { return std::polar(s, phi0 + u * (2 * M_PI - 2 * phi0)); },
                    [=](double) { return s * (2 * M_PI - 2 * phi0); }, 2 * nodes});
  pieces.push_back({[=](double u) { return tm + u * (nm - tm); }, [=](double) { return std::abs(nm - tm); }, nodes});
  pieces.push_back({[=](double u) { return 1.0 + std::polar(notch, M_PI + g - 2 * g * u); },
                    [=](double) { return 2 * g * notch; }, nodes});
  pieces.push_back({[=](double u) { return np + u * (tp - np); }, [=](double) { return std::abs(tp - np); }, nodes});

  Integrator integ(integrand, spec);
  QuadratureResult total;
  for (const Piece& pc : pieces) {
    QuadratureResult r = integ.integrate(pc, 1e-10);
    total.bound += r.bound;
    total.error += r.error;
  }
  return total;
}

double fc_lower_bound(const SuperOp& t, const StolzDomain& d, int degree, int trials, Exponent p, std::uint64_t seed) {
  require(degree >= 0 && trials >= 1, ErrorCode::invalid_argument, "fc_lower_bound: bad degree or trial count");
  double best = 0.0;
  for (int tr = 0; tr < trials; ++tr) {
    Polynomial phi;
    if (tr == 0) {
      phi = {1.0};
    } else {
      Rng rng(seed, static_cast<std::uint64_t>(tr));
      for (int k = 0; k <= degree; ++k) phi.push_back(rng.complex_gaussian());
    }
    double sup = boundary_sup_upper(d, phi);
    if (sup <= 0.0) continue;
    double nrm = operator_norm_bracket(polynomial_of(t, phi), p).lower;
    best = std::max(best, nrm / sup);
  }
  return best;
}

double cb_lower_bound(const SuperOp& t, int m, Exponent p, const Polynomial& phi, int trials, std::uint64_t seed) {
  require(m >= 1 && trials >= 1, ErrorCode::invalid_argument, "cb_lower_bound: bad level or trial count");
  const Exponent q = p.conjugate();
  const SuperOp f = polynomial_of(t, phi);
  const SuperOp fa = f.adjoint();
  const Eigen::Index n = t.dim();
  auto amplified = [n](const SuperOp& op, const Mat& y, int level) {
    Mat out(y.rows(), y.cols());
    for (int i = 0; i < level; ++i)
      for (int j = 0; j < level; ++j) out.block(i * n, j * n, n, n) = op.apply(y.block(i * n, j * n, n, n));
    return out;
  };
  double best = 0.0;
  for (int level = 1; level <= m; ++level) {
    Rng rng(seed, static_cast<std::uint64_t>(level));
    for (int tr = 0; tr < trials; ++tr) {
      Mat y = rng.substream(static_cast<std::uint64_t>(tr)).gaussian_matrix(level * n, level * n);
      for (int it = 0; it < 10; ++it) {
        double den = schatten_norm(y, p);
        if (den == 0.0) break;
        Mat z = amplified(f, y, level);
        best = std::max(best, schatten_norm(z, p) / den);
        Mat w = amplified(fa, dual_norming(z, p), level);
        if (w.norm() == 0.0) break;
        y = dual_norming(w, q);
      }
    }
  }
  return best;
}

}  // namespace rittkit
