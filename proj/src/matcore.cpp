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

#include "rittkit/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rittkit {

void check_mat(const Mat& x, const char* who) {
  if (x.rows() != x.cols() || x.rows() == 0)
    fail(ErrorCode::dimension_mismatch, std::string(who) + ": matrix must be square and nonempty");
  if (!x.allFinite())
    fail(ErrorCode::invalid_argument, std::string(who) + ": matrix has non-finite entries");
}

RVec singular_values(const Mat& x) {
  if (!x.allFinite()) fail(ErrorCode::numerical_failure, "singular_values: non-finite input");
  RVec s;
  if (std::min(x.rows(), x.cols()) <= 16) {
    Eigen::JacobiSVD<Mat> svd(x);
    s = svd.singularValues();
  } else {
    Eigen::BDCSVD<Mat> svd(x);
    s = svd.singularValues();
  }
  if (!s.allFinite()) fail(ErrorCode::numerical_failure, "singular_values: decomposition failed");
  // Eigen already sorts, but the contract is explicit about it.
  std::sort(s.data(), s.data() + s.size(), std::greater<double>());
  return s;
}

double schatten_norm_of(const RVec& s, Exponent p) {
  if (s.size() == 0) return 0.0;
  double smax = s.cwiseAbs().maxCoeff();
  if (smax == 0.0) return 0.0;
  if (p.is_infinite()) return smax;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(std::abs(s(i)) / smax, p.value());
  return smax * std::pow(acc, 1.0 / p.value());
}

double schatten_norm(const Mat& x, Exponent p) { return schatten_norm_of(singular_values(x), p); }

double schatten_norm_of_sqrt(const Mat& h, Exponent p) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "eigensolver failed");
  RVec s = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return schatten_norm_of(s, p);
}

Mat modulus(const Mat& x) { return psd_power(x.adjoint() * x, 0.5); }

Complex trace_pairing(const Mat& x, const Mat& y) {
  if (x.rows() != y.cols() || x.cols() != y.rows())
    fail(ErrorCode::dimension_mismatch, "trace_pairing: dimension mismatch");
  // Tr(xy) = sum_ij x_ij y_ji without forming the product.
  return (x.array() * y.transpose().array()).sum();
}

CVec eigenvalues(const Mat& x) {
  Eigen::ComplexEigenSolver<Mat> es(x, false);
  if (es.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "eigensolver failed");
  return es.eigenvalues();
}

double spectral_radius(const Mat& x) { return eigenvalues(x).cwiseAbs().maxCoeff(); }

double operator_norm(const Mat& x) {
  if (x.size() == 0) return 0.0;
  return singular_values(x)(0);
}

Mat psd_power(const Mat& h, double power, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
  if (es.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "eigensolver failed");
  RVec ev = es.eigenvalues();
  double emax = ev.cwiseAbs().maxCoeff();
  RVec fv(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    double e = ev(i);
    if (e <= cutoff * emax || e <= 0.0)
      fv(i) = (power == 0.0) ? 1.0 : 0.0;
    else
      fv(i) = std::pow(e, power);
  }
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

Mat identity(Eigen::Index n) { return Mat::Identity(n, n); }

Mat matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// ---------------------------------------------------------------------------
// scalar functions

ScalarFunction ScalarFunction::polynomial(std::vector<Complex> coeffs) {
  ScalarFunction f;
  f.name = "polynomial";
  f.eval = [c = std::move(coeffs)](Complex z, int k) -> Complex {
    // k-th derivative of sum c_j z^j, Horner on the falling-factorial weights
    Complex acc = 0.0;
    for (int j = static_cast<int>(c.size()) - 1; j >= k; --j) {
      double w = 1.0;
      for (int i = 0; i < k; ++i) w *= static_cast<double>(j - i);
      acc = acc * z + w * c[j];
    }
    return acc;
  };
  return f;
}

ScalarFunction ScalarFunction::one_minus_power(double alpha) {
  double rounded = std::round(alpha);
  if (alpha >= 0 && std::abs(alpha - rounded) < 1e-15 && rounded <= 64) {
    // integer powers are polynomials: no branch cut
    int m = static_cast<int>(rounded);
    std::vector<Complex> c(m + 1);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      c[j] = ((j % 2) ? -1.0 : 1.0) * binom;
      binom = binom * (m - j) / (j + 1);
    }
    ScalarFunction f = polynomial(std::move(c));
    f.name = "one_minus_power";
    return f;
  }
  ScalarFunction f;
  f.name = "one_minus_power";
  f.branch_cut = std::make_pair(Complex(1.0, 0.0), Complex(1.0, 0.0));
  f.eval = [alpha](Complex z, int k) -> Complex {
    double w = 1.0;
    for (int i = 0; i < k; ++i) w *= -(alpha - i);
    return w * std::pow(Complex(1.0) - z, alpha - k);
  };
  return f;
}

ScalarFunction ScalarFunction::resolvent(Complex lambda) {
  ScalarFunction f;
  f.name = "resolvent";
  f.eval = [lambda](Complex z, int k) -> Complex {
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return fact / std::pow(lambda - z, k + 1);
  };
  return f;
}

// ---------------------------------------------------------------------------
// Schur-Parlett

namespace {

// Swap the adjacent diagonal entries k, k+1 of the upper triangular t by a
// unitary rotation, updating the Schur vectors u (LAPACK ztrexc step).
void swap_adjacent(Mat& t, Mat& u, Eigen::Index k) {
  const Eigen::Index n = t.rows();
  Complex t11 = t(k, k);
  Complex t22 = t(k + 1, k + 1);
  Complex f = t(k, k + 1);
  Complex g = t22 - t11;
  double af = std::abs(f), ag = std::abs(g);
  if (ag == 0.0) return;
  double c;
  Complex s;
  if (af == 0.0) {
    c = 0.0;
    s = std::conj(g) / ag;
  } else {
    double nrm = std::hypot(af, ag);
    c = af / nrm;
    s = (f / af) * std::conj(g) / nrm;
  }
  for (Eigen::Index j = k + 2; j < n; ++j) {
    Complex x = t(k, j), y = t(k + 1, j);
    t(k, j) = c * x + s * y;
    t(k + 1, j) = c * y - std::conj(s) * x;
  }
  Complex sc = std::conj(s);
  for (Eigen::Index i = 0; i < k; ++i) {
    Complex x = t(i, k), y = t(i, k + 1);
    t(i, k) = c * x + sc * y;
    t(i, k + 1) = c * y - s * x;
  }
  t(k, k) = t22;
  t(k + 1, k + 1) = t11;
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex x = u(i, k), y = u(i, k + 1);
    u(i, k) = c * x + sc * y;
    u(i, k + 1) = c * y - s * x;
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// f on a triangular block whose eigenvalues are all within the cluster
// tolerance: Taylor expansion about their mean.
Mat taylor_block(const Mat& block, const ScalarFunction& f, int max_terms, bool& ill) {
  const Eigen::Index m = block.rows();
  Complex sigma = block.diagonal().mean();
  if (m == 1) return Mat::Constant(1, 1, f.eval(block(0, 0), 0));
  Mat nmat = block - sigma * Mat::Identity(m, m);
  Mat power = Mat::Identity(m, m);
  Mat result = f.eval(sigma, 0) * power;
  double fact = 1.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int k = 1; k <= max_terms; ++k) {
    power = power * nmat;
    fact *= k;
    Mat term = (f.eval(sigma, k) / fact) * power;
    result += term;
    double tn = term.cwiseAbs().maxCoeff();
    if (k >= m && tn <= eps * std::max(1.0, result.cwiseAbs().maxCoeff())) return result;
    if (power.cwiseAbs().maxCoeff() == 0.0) return result;
  }
  ill = true;
  return result;
}

// Solve a x - x b = r for upper triangular a, b with disjoint spectra.
Mat triangular_sylvester(const Mat& a, const Mat& b, const Mat& r) {
  const Eigen::Index p = a.rows(), q = b.rows();
  Mat x(p, q);
  for (Eigen::Index c = 0; c < q; ++c) {
    CVec rhs = r.col(c);
    for (Eigen::Index k = 0; k < c; ++k) rhs += x.col(k) * b(k, c);
    Mat shifted = a - b(c, c) * Mat::Identity(p, p);
    x.col(c) = shifted.triangularView<Eigen::Upper>().solve(rhs);
  }
  return x;
}

}  // namespace

MatrixFunctionResult primary_matrix_function(const Mat& x, const ScalarFunction& f,
                                             const MatrixFunctionOptions& opts) {
  check_mat(x, "primary_matrix_function");
  const Eigen::Index n = x.rows();
  Eigen::ComplexSchur<Mat> schur(x);
  if (schur.info() != Eigen::Success) fail(ErrorCode::numerical_failure, "Schur decomposition failed");
  Mat t = schur.matrixT();
  Mat u = schur.matrixU();
  // ComplexSchur leaves rounding noise below the diagonal untouched
  t = t.triangularView<Eigen::Upper>();

  if (f.branch_cut) {
    auto [origin, dir] = *f.branch_cut;
    dir /= std::abs(dir);
    for (Eigen::Index i = 0; i < n; ++i) {
      Complex rel = (t(i, i) - origin) * std::conj(dir);
      double dist = rel.real() < 0 ? std::abs(rel) : std::abs(rel.imag());
      if (dist <= opts.branch_tol * std::max(1.0, std::abs(t(i, i))))
        fail(ErrorCode::spectrum, "primary_matrix_function: spectrum touches the branch cut of " + f.name);
    }
  }

  // cluster eigenvalues
  UnionFind uf(static_cast<int>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      double scale = std::max({1.0, std::abs(t(i, i)), std::abs(t(j, j))});
      if (std::abs(t(i, i) - t(j, j)) <= opts.cluster_tol * scale) uf.unite(static_cast<int>(i), static_cast<int>(j));
    }
  std::vector<int> rank_of_root(n, -1);
  std::vector<int> rank(n);
  int nclusters = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    int r = uf.find(static_cast<int>(i));
    if (rank_of_root[r] < 0) rank_of_root[r] = nclusters++;
    rank[i] = rank_of_root[r];
  }

  // bubble the clusters into contiguous runs
  for (bool swapped = true; swapped;) {
    swapped = false;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
      if (rank[k] > rank[k + 1]) {
        swap_adjacent(t, u, k);
        std::swap(rank[k], rank[k + 1]);
        swapped = true;
      }
    }
  }

  std::vector<Eigen::Index> start;
  for (Eigen::Index i = 0; i < n; ++i)
    if (i == 0 || rank[i] != rank[i - 1]) start.push_back(i);
  start.push_back(n);
  const std::size_t nb = start.size() - 1;

  MatrixFunctionResult out;
  for (std::size_t a = 0; a < nb; ++a)
    for (std::size_t b = a + 1; b < nb; ++b)
      for (Eigen::Index i = start[a]; i < start[a + 1]; ++i)
        for (Eigen::Index j = start[b]; j < start[b + 1]; ++j)
          out.min_separation = std::min(out.min_separation, std::abs(t(i, i) - t(j, j)));
  if (out.min_separation < opts.warn_separation) out.ill_conditioned = true;

  Mat fm = Mat::Zero(n, n);
  auto blk = [&](Mat& m, std::size_t i, std::size_t j) {
    return m.block(start[i], start[j], start[i + 1] - start[i], start[j + 1] - start[j]);
  };
  for (std::size_t j = 0; j < nb; ++j) {
    blk(fm, j, j) = taylor_block(blk(t, j, j), f, opts.max_taylor_terms, out.ill_conditioned);
    for (std::size_t ii = j; ii-- > 0;) {
      Mat r = blk(fm, ii, ii) * blk(t, ii, j) - blk(t, ii, j) * blk(fm, j, j);
      for (std::size_t k = ii + 1; k < j; ++k) r += blk(fm, ii, k) * blk(t, k, j) - blk(t, ii, k) * blk(fm, k, j);
      blk(fm, ii, j) = triangular_sylvester(blk(t, ii, ii), blk(t, j, j), r);
    }
  }
  out.value = u * fm * u.adjoint();
  if (!out.value.allFinite()) fail(ErrorCode::numerical_failure, "primary_matrix_function: non-finite result");
  return out;
}

}  // namespace rittkit
