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
 * @file capacity.hpp
 * @brief Capacity estimators for environment-assisted classical coding.
 *
 * The estimators share one architecture: an outer multi-start search over
 * pure states (environment preparations and input ensembles) and an inner
 * ascent over the ensemble probabilities.  Every returned figure carries a
 * bound direction; optimizer outputs are lower bounds unless a closed form
 * or a structural detection (constant channel) upgrades them to exact.
 */

#pragma once

#include "envcap/channels.hpp"
#include "envcap/optimize.hpp"
#include "envcap/qinfo.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace envcap {

enum class Bound { lower, upper, exact };
std::string to_string(Bound b);

enum class Sender { A, H };
enum class Helper { separable, entangled };

/// Probability below which ensemble members are treated as unused.
inline constexpr double kProbPrune = 1e-12;

struct OptimizerConfig {
  int restarts = 32;
  long max_iterations = 10000;
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  int ensemble_size = 0;  ///< 0 selects the per-operation default
  int threads = 1;
};

struct Achiever {
  Ensemble ensemble;                  ///< sender ensemble (probs after pruning)
  std::vector<ComplexVector> helpers; ///< environment state(s); one per member
                                      ///< for conferencing, otherwise a single entry
};

struct OptTrace {
  int restarts = 0;
  int best_start = -1;
  long iterations = 0;  ///< total coordinate sweeps across starts
};

struct CapacityEstimate {
  double bits = 0.0;
  Bound bound = Bound::lower;
  Achiever achiever;
  OptTrace trace;
};

struct FixedStatesResult {
  double chi = 0.0;
  std::vector<double> probs;
  long iterations = 0;
  bool converged = false;
  std::vector<double> chi_trace;  ///< objective after each iteration (monotone)
};

/**
 * Accessible information maximization for a fixed output ensemble: the
 * multiplicative ascent p_x <- p_x 2^{D(rho_x || rho_avg)} / Z.  Converged
 * when every supported member sits at equal divergence from the average,
 * max_x |D_x - chi| <= tolerance.  The iteration never decreases the
 * objective; a decrease beyond numerical noise raises std::runtime_error.
 */
FixedStatesResult holevo_chi_fixed_states(std::span<const ComplexMatrix> states,
                                          double tolerance = 1e-9,
                                          long max_iterations = 20000);

/// Best product-input Holevo quantity of a channel over seeded ensembles
/// of pure inputs (default ensemble size: dim_in^2).
CapacityEstimate holevo_chi(const QuantumChannel& n, const OptimizerConfig& cfg);

/// One-shot passive-helper rate: max over pure environment states and
/// input ensembles of the Holevo quantity of the effective channel.
CapacityEstimate chi_H_tensor(const BipartiteUnitary& w, const OptimizerConfig& cfg);

/// Same figure with the sending and helping roles assignable to either
/// side; Sender::A reproduces chi_H_tensor.
CapacityEstimate chi_role_swapped(const BipartiteUnitary& w, Sender sender,
                                  const OptimizerConfig& cfg);

/// Minimal output entropy over pure product inputs alpha ⊗ eta.  The
/// returned value is an upper bound on the true minimum.
CapacityEstimate min_output_entropy(const BipartiteUnitary& w,
                                    const OptimizerConfig& cfg);

/// log2|B| - s_min: an upper bound on the one-shot rate whenever s_min
/// lower-bounds the minimal output entropy.
double chi_upper_bound(const BipartiteUnitary& w, double s_min);

/**
 * Rate of a controlled interaction given by its blocks.  Without
 * entanglement: max over p and pure |eta> on E of S(sum_i p_i U_i eta U_i^dag).
 * With entanglement the helper holds |eta> on R ⊗ E (|R| = |E|) and the
 * blocks act on E alone.
 */
CapacityEstimate controlled_capacity(std::span<const ComplexMatrix> blocks,
                                     bool entangled_env, const OptimizerConfig& cfg);

/// Conferencing-encoder rate over product pure pairs alpha_x ⊗ eta_x
/// (default ensemble size dimA*dimE*min(dimA,dimE), capped at dimB^2).
CapacityEstimate conf_product_capacity(const BipartiteUnitary& w,
                                       const OptimizerConfig& cfg);

/// Positive constant lower-bounding the sum of the two role-swapped
/// rates for any interaction with equal leg dimensions d.
double uncertainty_bound(Index d);

/// Trade-off profile whose positive part witnesses the uncertainty
/// constant; f(epsilon0(d)) = 0.
double uncertainty_f(double epsilon, Index d);

/// Closed-form root of uncertainty_f in epsilon.
double uncertainty_epsilon0(Index d);

/// Capacity difference bound under a diamond-norm perturbation epsilon:
/// 2 eps log2|B| + (2 + eps) H2(eps / (2 + eps)).
double continuity_bound(double epsilon, Index dim_b);

/// Universal positive lower bound on the conferencing rate:
/// (3 / (8 ln 2)) (1 / (dimA dimE))^4.
double conf_lower_bound(Index dim_a, Index dim_e);

/**
 * Block-coding rate over n uses (n in {1, 2}; total input dimension
 * guarded to 81).  The helper preparation is a product across uses or a
 * single entangled state, and the reported figure is chi/n.  n = 2 seeds
 * one start from the n = 1 solution, so the estimate never falls below
 * the single-use figure.
 */
CapacityEstimate finite_n_capacity(const BipartiteUnitary& w, int n, Helper helper,
                                   const OptimizerConfig& cfg);

}  // namespace envcap
