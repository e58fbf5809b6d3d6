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

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace rittkit {

// Random streams are keyed by (seed, index) so that independent tasks draw
// from independent substreams regardless of scheduling order.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t index = 0)
      : engine_(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1))) {}

  /// Substream for a sub-task; deterministic in (parent seed, index, sub).
  Rng substream(std::uint64_t sub) { return Rng(engine_(), sub); }

  // Box-Muller on top of the raw engine keeps the variates identical across
  // standard library implementations.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * M_PI * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next() { return engine_(); }

  std::complex<double> complex_gaussian() {
    double re = gaussian();
    double im = gaussian();
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

  Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_gaussian();
    return m;
  }

  /// Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
  Eigen::MatrixXcd unitary(Eigen::Index n) {
    Eigen::MatrixXcd g = gaussian_matrix(n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
      double mag = std::abs(r(j, j));
      if (mag > 0) q.col(j) *= r(j, j) / mag;
    }
    return q;
  }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rittkit
