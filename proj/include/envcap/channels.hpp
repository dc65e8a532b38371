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
 * @file channels.hpp
 * @brief Bipartite interaction unitaries and the channels they induce.
 *
 * A bipartite unitary W maps A ⊗ E to B ⊗ F.  The sender feeds A, a
 * helper prepares the environment E, the receiver reads B, and F is
 * discarded.  Matrix layout: rows are (b, f) with b slow, columns are
 * (a, e) with a slow.
 */

#pragma once

#include "envcap/tensor.hpp"

#include <span>
#include <vector>

namespace envcap {

inline constexpr double kKrausCompletenessTol = 1e-9;

class BipartiteUnitary {
 public:
  /// Validates dimA*dimE == dimB*dimF == size and unitarity to 1e-10.
  BipartiteUnitary(ComplexMatrix w, Index dim_a, Index dim_e, Index dim_b, Index dim_f);

  const ComplexMatrix& matrix() const { return w_; }
  Index dim_a() const { return dim_a_; }
  Index dim_e() const { return dim_e_; }
  Index dim_b() const { return dim_b_; }
  Index dim_f() const { return dim_f_; }

 private:
  ComplexMatrix w_;
  Index dim_a_, dim_e_, dim_b_, dim_f_;
};

/// Completely positive trace-preserving map in Kraus form.
/// Construction validates sum_k K^dag K = I to 1e-9.
class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<ComplexMatrix> kraus);

  const std::vector<ComplexMatrix>& kraus() const { return kraus_; }
  Index dim_in() const { return dim_in_; }
  Index dim_out() const { return dim_out_; }

 private:
  std::vector<ComplexMatrix> kraus_;
  Index dim_in_, dim_out_;
};

/// Classical-quantum ensemble: probabilities with matching pure states.
struct Ensemble {
  std::vector<double> probs;
  std::vector<ComplexVector> states;
};

/**
 * Channel A -> B obtained from W by fixing a pure environment state and
 * discarding F: Kraus operators K_f = (I_B ⊗ <f|_F) W (· ⊗ |eta>).
 */
QuantumChannel effective_channel(const BipartiteUnitary& w, const ComplexVector& eta);

/// Mixed-environment variant; eta is purified internally (Stinespring),
/// producing Kraus operators indexed by F and the purifier.
QuantumChannel effective_channel(const BipartiteUnitary& w, const DensityOperator& eta);

/**
 * Channel A -> B ⊗ K when the helper holds half of a (possibly mixed)
 * state kappa on E ⊗ K and forwards K to the receiver untouched:
 * rho |-> tr_F [ (W ⊗ I_K)(rho ⊗ kappa)(W ⊗ I_K)^dag ].
 * kappa.dims() must be {dimE, dimK}.
 */
QuantumChannel entanglement_assisted_channel(const BipartiteUnitary& w,
                                             const DensityOperator& kappa);

ComplexMatrix apply_channel(const QuantumChannel& n, const ComplexMatrix& rho);

/// tr_F [ W (alpha ⊗ eta) W^dag ]: joint sender/helper inputs, one output.
ComplexMatrix conferencing_output(const BipartiteUnitary& w, const ComplexMatrix& alpha,
                                  const ComplexMatrix& eta);

/// Output of W on a pure product input, before discarding anything,
/// reduced to B: fast path used throughout the optimizers.
ComplexMatrix pure_input_output(const BipartiteUnitary& w, const ComplexVector& alpha,
                                const ComplexVector& eta);

/// Discrete Weyl operator W(x, z) = X(x) Z(z) on C^d:
/// X(x)|j> = |j + x mod d>, Z(z)|j> = exp(2 pi i z j / d)|j>.
/// Indices must satisfy 0 <= x, z < d; anything else throws.
ComplexMatrix weyl(Index d, Index x, Index z);

/// Controlled unitary sum_i |i><i| (A -> F) ⊗ U_i (E -> B); the control
/// value leaves through F while the block acts on the environment.
BipartiteUnitary controlled_unitary(std::span<const ComplexMatrix> blocks);

/// SWAP as a bipartite unitary: (|psi>_A, |phi>_E) -> (|phi>_B, |psi>_F).
BipartiteUnitary swap_operator(Index dim_a, Index dim_e);

/**
 * Controlled-shift augmentation for a square interaction (all four legs
 * of dimension d).  A register L of dimension d^2 with basis |xz>
 * (x slow) is appended to the sender side and passed through; after W,
 * the Weyl operator W(x, z) is applied to B, controlled by L.
 * Resulting legs: (L ⊗ A) ⊗ E -> B ⊗ (F ⊗ L).
 */
BipartiteUnitary shor_augment(const BipartiteUnitary& w);

/// Grouped tensor product: legs (A1A2)(E1E2) -> (B1B2)(F1F2) with the
/// index interleaving handled internally.
BipartiteUnitary tensor_bipartite(const BipartiteUnitary& w1, const BipartiteUnitary& w2);

/// True when every basis coherence is destroyed: max entry of
/// N(|b_i><b_j|) is <= 1e-9 for all i != j.  Columns of @p basis give the
/// basis; empty means computational.
bool is_classical_quantum(const QuantumChannel& n,
                          const ComplexMatrix& basis = ComplexMatrix());

enum class EbStatus { breaking, not_breaking, inconclusive };

/// PPT test on the Choi state.  NPT is a definite no; PPT is definite
/// only when dim_in * dim_out <= 6, otherwise inconclusive.
EbStatus is_entanglement_breaking(const QuantumChannel& n);

/// Choi state (id ⊗ N)(|Phi><Phi|), Phi maximally entangled; dims
/// {dim_in, dim_out}, trace one.
DensityOperator choi(const QuantumChannel& n);

/// Kraus operators from a Choi state's eigendecomposition (eigenvalues
/// below 1e-12 dropped); reproduces the channel action.
std::vector<ComplexMatrix> kraus_from_choi(const DensityOperator& c);

/// The three qutrit permutation/phase blocks used by the controlled
/// example: identity, the (01) transposition, and diag(1, -1, 1).
std::vector<ComplexMatrix> qutrit_blocks();

/// Controlled-Weyl interaction: blocks W(x, z) over all (x, z),
/// control dimension d^2, environment dimension d.
BipartiteUnitary weyl_controlled(Index d);

/// True when w equals swap_operator(dim_a, dim_e) up to a global phase
/// (max deviation 1e-10); such interactions induce constant channels.
bool is_swap_up_to_phase(const BipartiteUnitary& w);

}  // namespace envcap
