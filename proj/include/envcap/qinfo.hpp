// Copyright (c) 2026 the envcap developers
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

/// Entropies, divergences and channel distance estimators.  All entropic
/// quantities are in bits (base-2 logarithms).

#pragma once

#include "envcap/optimize.hpp"
#include "envcap/tensor.hpp"

#include <span>
#include <string>
#include <vector>

namespace envcap {

/// H2(p) = -p log2 p - (1-p) log2 (1-p); throws outside [0, 1].
double binary_entropy(double p);

/// Von Neumann entropy S(rho) in bits; never negative.
double von_neumann_entropy(const DensityOperator& rho);

/**
 * Umegaki relative entropy D(a || b) in bits.
 *
 * Returns +infinity when the support of @p a is not contained in the
 * support of @p b; membership in the kernel of b uses the eigenvalue
 * threshold 1e-12, and the mass of a on that kernel is compared against
 * the same threshold.
 */
double relative_entropy(const DensityOperator& a, const DensityOperator& b);

/// I(A:B) = S(A) + S(B) - S(AB) for the bipartition selected by
/// @p cut_a (subsystem indices of side A; the rest form side B).
double mutual_information(const DensityOperator& rho, const std::vector<int>& cut_a);

/// Trace norm (sum of singular values).
double trace_norm(const ComplexMatrix& m);

struct ChannelDistanceEstimate {
  double value = 0.0;
  std::string kind;      ///< "diamond-lower-bound" or "induced-trace-norm"
  ComplexVector witness; ///< pure input achieving value (ancilla ⊗ input for diamond)
};

/**
 * Lower bound on the diamond distance ||N1 - N2||_diamond via
 * max over pure |psi> on R ⊗ A (|R| = |A|) of
 * ||(id ⊗ (N1 - N2))(|psi><psi|)||_1, maximized with seeded restarts.
 * Channels are given as Kraus lists with matching dimensions.
 *
 * The search always includes the induced-trace-norm witness embedded with
 * a fixed reference state, so the result never falls below
 * induced_trace_norm_lower_bound on the same inputs and options.
 */
ChannelDistanceEstimate diamond_distance_lower_bound(
    std::span<const ComplexMatrix> kraus1, std::span<const ComplexMatrix> kraus2,
    const OptimizeOptions& opt);

/// Same maximization without the reference system: a lower bound on the
/// induced one-to-one norm (and hence on the diamond norm).
ChannelDistanceEstimate induced_trace_norm_lower_bound(
    std::span<const ComplexMatrix> kraus1, std::span<const ComplexMatrix> kraus2,
    const OptimizeOptions& opt);

namespace detail {

/// S(m) in bits for a Hermitian PSD trace-1 matrix; no validation,
/// negative eigenvalues are clamped to zero.  Hot-path helper.
double entropy_bits(const ComplexMatrix& m);

/// Entropy of a classical spectrum (clamps negatives and zeros).
double entropy_bits(const RealVector& spectrum);

}  // namespace detail

}  // namespace envcap
