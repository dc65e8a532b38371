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

#ifndef ENVCAP_EXPERIMENTS_HPP
#define ENVCAP_EXPERIMENTS_HPP

/**
 * @file experiments.hpp
 * @brief Scripted reproductions of the headline numerical results.
 *
 * Each experiment returns an ExperimentReport: a list of named values, each
 * carrying a bound tag, a tolerance, and whether the value participates in
 * the report's pass/fail verdict.  Claims split into two grades.  Certificate
 * values come from explicitly constructed states (Gram matrices, fixed-state
 * Holevo quantities) and are asserted.  Search values come from non-convex
 * optimization; they are recorded with a margin but never asserted as upper
 * bounds, since a multi-start search can only certify one direction.
 *
 * All randomness is funneled through explicit seeds, and reports are
 * reproducible bit for bit from (name, seed, config).
 */

#include "envcap/capacity.hpp"
#include "envcap/tensor.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace envcap {

/// One measured number inside a report.
struct ReportValue {
  std::string name;
  double value = 0.0;
  Bound bound = Bound::exact;  ///< direction the number certifies
  double tolerance = 0.0;      ///< tolerance used by the check, 0 if none
  bool asserted = false;       ///< whether this value affects report.pass
  bool pass = true;            ///< true for informational values
};

/// Outcome of one scripted experiment.
struct ExperimentReport {
  std::string name;
  std::vector<std::pair<std::string, double>> inputs;  ///< seeds, dims, sizes
  std::vector<ReportValue> values;
  std::vector<double> samples;  ///< raw per-sample data for histograms
  bool pass = true;             ///< conjunction of all asserted values
  double runtime_seconds = 0.0;  ///< wall clock; not part of serialized output
};

/**
 * Haar-distributed unitary on C^dim.
 *
 * Complex Ginibre matrix (hand-rolled Box-Muller deviates in fixed row-major
 * re/im order), QR factorization, then the R-diagonal phases folded into Q so
 * the R diagonal is positive real.  Fixed seed gives a bit-identical matrix.
 */
ComplexMatrix haar_unitary(Index dim, std::uint64_t seed);

/**
 * Qutrit controlled-block example: three permutation/phase blocks whose
 * standalone passive-helper capacity sits strictly below log2(3), while
 * pairing the interaction with a SWAP and an entangled two-leg helper
 * reaches log2(3) through three mutually orthogonal outputs.
 *
 * Asserted: Gram matrix of the constructed outputs equals I3 within 1e-12,
 * the protocol outputs match the grouped interaction physically, the induced
 * rate equals log2(3), and the standalone search value leaves a positive
 * margin.  The margin's size is recorded, not asserted.
 */
ExperimentReport superadditivity_qutrit(const OptimizerConfig& cfg = {});

/**
 * Controlled-Weyl example in dimension d (2 or 3): the d^2 outputs
 * (I (x) W(x,z)) Phi_d of the paired protocol are orthonormal, certifying
 * rate 2 log2(d), while the standalone interaction tops out at log2(d),
 * witnessed constructively by the uniform ensemble over the control basis
 * with a fixed environment state.
 */
ExperimentReport superadditivity_weyl(Index d, const OptimizerConfig& cfg = {});

/**
 * Conjugate-pair example: for Haar V on C^(d*d), the pair V (x) V* fixes the
 * full maximally entangled input exactly, so entangled product inputs across
 * the pair reach output entropy zero.  Asserted: fixed-point deviation within
 * 1e-10 and paired output entropy within 1e-9.  Recorded: a single-factor
 * minimum-entropy search value, the augmented pair rate 2 log2(d), and the
 * expectation threshold log2(d) - 1/ln2 - 1 it is compared against.
 */
ExperimentReport conjugate_pair_conferencing(Index d, std::uint64_t seed,
                                             const OptimizerConfig& cfg = {});

/**
 * Minimum-output-entropy statistics over Haar interactions from U(d^2),
 * d in {2, 3}, at least 10 samples.  Sample i uses seed + i.  Reports the
 * empirical mean/min/max (raw samples kept for histograms) against the
 * expectation bound log2(d) - 1/ln2 - 1, which is vacuous at these sizes
 * and therefore recorded rather than asserted.
 */
ExperimentReport haar_min_entropy_stats(Index d, int samples, std::uint64_t seed,
                                        const OptimizerConfig& cfg = {});

/**
 * Ancilla-equality sweep: for random SU(2) pairs and a random mixing
 * probability, the maximum output entropy of the mixed-unitary map agrees
 * with and without an input-side ancilla.  Both maxima run multi-start
 * sphere searches; the per-pair gap is asserted to stay within 2e-4 and the
 * signed gaps are kept as raw samples.
 */
ExperimentReport ancilla_equality_sweep(int samples, std::uint64_t seed,
                                        const OptimizerConfig& cfg = {});

}  // namespace envcap

#endif  // ENVCAP_EXPERIMENTS_HPP
