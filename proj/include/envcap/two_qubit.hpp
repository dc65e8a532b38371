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

/**
 * @file two_qubit.hpp
 * @brief Canonical form and closed-form rates for two-qubit interactions.
 *
 * Every two-qubit unitary factors as local unitaries around
 * exp(-i/2 (ax X⊗X + ay Y⊗Y + az Z⊗Z)); the angle triple determines all
 * rates computed here because local factors never change them.  The
 * decomposition works in the magic (phased Bell) basis, where the
 * canonical part is diagonal and local factors become real orthogonal.
 */

#pragma once

#include "envcap/channels.hpp"
#include "envcap/tensor.hpp"

#include <utility>
#include <vector>

namespace envcap {

/// Canonical interaction angles, reduced to the standard tetrahedron
/// pi/2 >= alpha_x >= alpha_y >= alpha_z >= 0.
struct KrausCiracParams {
  double alpha_x = 0.0;
  double alpha_y = 0.0;
  double alpha_z = 0.0;
};

/// Edge coordinates of a controlled two-qubit interaction: the block
/// separation angle d and its complement u = pi/2 - d.
struct EdgeParameter {
  double d = 0.0;
  double u = 0.0;
};

/// Constructive one-bit code for an arbitrary two-qubit interaction:
/// two product inputs whose channel outputs are orthogonal pure states.
struct ConferencingCode2Q {
  std::vector<PureState> sender_inputs;              ///< alpha_b on A, b = 0, 1
  std::vector<PureState> helper_inputs;              ///< eta_b on E
  std::vector<ComplexMatrix> outputs;                ///< channel outputs on B
  std::vector<std::pair<Complex, Complex>> weights;  ///< span coefficients per message
};

/// The four phased Bell vectors, in the conventional order and phases,
/// as pure states on C^2 ⊗ C^2.
std::vector<PureState> magic_basis();

/// exp(-i/2 (ax X⊗X + ay Y⊗Y + az Z⊗Z)) assembled spectrally: diagonal in
/// the magic basis with phases e^{-i lambda_k}.  Angles are unrestricted.
BipartiteUnitary canonical_unitary(const KrausCiracParams& p);

/**
 * Canonical angles of an arbitrary two-qubit unitary.
 *
 * The spectrum of U^T U in the magic basis equals {e^{-2i lambda_k}} and
 * is invariant under local unitaries.  Phase unwrapping is resolved by
 * enumerating the finitely many half-turn branches and keeping the unique
 * assignment whose angles land in the tetrahedron; a final complex
 * conjugation flip reduces alpha_z to be non-negative.  Local factors are
 * not extracted.  Throws std::runtime_error when no consistent assignment
 * exists (non-unitary input slipping past validation).
 */
KrausCiracParams kraus_cirac_angles(const BipartiteUnitary& u);

/**
 * Edge coordinates of the controlled interaction with blocks u0, u1.
 * Blocks are special-unitarized by phase division first; then
 * 2 cos t = |tr(u0^dag u1)| fixes t in [0, pi/2], d = t, u = pi/2 - d.
 * Taking the modulus makes the result independent of the sign ambiguity
 * of the 2x2 determinant square root.
 */
EdgeParameter controlled_edge_parameter(const ComplexMatrix& u0, const ComplexMatrix& u1);

/// One-shot rate of the two-block controlled interaction at edge
/// coordinate u: H2((1 + sin u)/2).  Valid for 0 <= u <= pi/2; also the
/// entanglement-assisted value, which coincides for these interactions.
double cq_capacity_closed_form(double u);

/**
 * Coefficients (c0, c1), with |c0 phi0 + c1 phi1| = 1 and c0 real
 * non-negative, such that the combination has Schmidt rank one across
 * the 2:2 cut.  Solves det(c0 M0 + c1 M1) = 0 for the reshaped 2x2
 * matrices; the homogeneous quadratic always has a root over C.  Throws
 * std::invalid_argument when the inputs are linearly dependent and every
 * root collapses to the zero vector.
 */
std::pair<Complex, Complex> product_state_in_span(const PureState& phi0, const PureState& phi1);

/**
 * One-bit conferencing code for an arbitrary two-qubit interaction: for
 * each message b the span of U^dag(|b> ⊗ |f>) over f contains a product
 * state, which the two parties prepare; the channel outputs are then the
 * orthogonal pure states |0><0| and |1><1| on B.  Construction verifies
 * both code invariants (product inputs to 1e-9, output trace distance
 * 2 - 1e-9) and throws std::runtime_error if numerics break them.
 */
ConferencingCode2Q conferencing_code_two_qubit(const BipartiteUnitary& u);

}  // namespace envcap
