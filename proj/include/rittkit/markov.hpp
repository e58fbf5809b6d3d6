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

// Selfadjoint Markov maps on M_n (unital, completely positive, trace
// preserving, symmetric for the normalized trace).

#include <cstdint>
#include <vector>

#include "rittkit/decomp.hpp"
#include "rittkit/superop.hpp"

namespace rittkit {

struct MarkovCertificate {
  bool unital = false;
  bool trace_preserving = false;
  bool cp = false;
  bool selfadjoint = false;
  bool minus_one_free = false;

  bool valid() const { return unital && trace_preserving && cp && selfadjoint && minus_one_free; }
};

struct MarkovMap {
  SuperOp op;
  MarkovCertificate certificate;
};

/// Checks to 1e-10; -1 must be at distance > 1e-8 from the spectrum.
MarkovCertificate validate_markov(const SuperOp& t);

/// x -> m o x for m real symmetric PSD with unit diagonal.
MarkovMap schur_markov(const Mat& m);

/// x -> sum_i w_i u_i x u_i^*, with the family closed under adjoints and
/// equal weights on adjoint pairs.
MarkovMap unitary_mixture_markov(const std::vector<double>& weights, const std::vector<Mat>& unitaries);

/// Projection onto the fixed points of T along Ran(I - T), as an n^2 x n^2
/// matrix on vec(x).
Mat ergodic_projection(const SuperOp& t);

struct MarkovDemo {
  DecompResult result;
  /// The component of x that was decomposed, (I - P) x.
  Mat x_restricted;
  /// Dimension of the fixed-point space that was split off.
  Eigen::Index fixed_dim = 0;
};

/// Decomposition of the Ran(I - T) component of x for the operator T - P,
/// where 1 is no longer an eigenvalue.
MarkovDemo markov_decomposition_demo(const MarkovMap& t, Exponent p, const Mat& x, const DecompOptions& opts = {});

}  // namespace rittkit
