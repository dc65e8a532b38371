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

#include "envcap/experiments.hpp"

#include "envcap/channels.hpp"
#include "envcap/optimize.hpp"
#include "envcap/qinfo.hpp"

#include <Eigen/Dense>

#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace envcap {

namespace {

constexpr double kLn2 = std::numbers::ln2;

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_ = Clock::now();
};

void add(ExperimentReport& rep, std::string name, double value, Bound bound, double tol,
         bool asserted, bool ok = true) {
  rep.values.push_back({std::move(name), value, bound, tol, asserted, asserted ? ok : true});
  if (asserted && !ok) rep.pass = false;
}

ComplexVector basis_state(Index dim, Index i) {
  ComplexVector v = ComplexVector::Zero(dim);
  v[i] = 1.0;
  return v;
}

ComplexVector uniform_state(Index dim) {
  return ComplexVector::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

/// Rank-r pairing sum_{i<r} |ii>/sqrt(r) on C^k (x) C^k.
ComplexVector mes(Index k, Index r) {
  ComplexVector v = ComplexVector::Zero(k * k);
  for (Index i = 0; i < r; ++i) v[i * k + i] = 1.0 / std::sqrt(static_cast<double>(r));
  return v;
}

RealVector pack_one(const ComplexVector& psi) {
  RealVector x(2 * psi.size());
  state_to_block(psi, x, 0);
  return x;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Ginibre + QR with the R diagonal normalized to positive reals.  Deviates
/// are drawn in row-major order, real part before imaginary part, so the
/// sample is pinned to the engine state alone.
ComplexMatrix ginibre_unitary(Index dim, std::mt19937_64& rng) {
  ComplexMatrix g(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < dim; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

double max_gram_deviation(const std::vector<ComplexVector>& states) {
  double dev = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const Complex g = states[i].dot(states[j]);
      dev = std::max(dev, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return dev;
}

OptimizeOptions sphere_options(const OptimizerConfig& cfg) {
  OptimizeOptions opt;
  opt.restarts = cfg.restarts;
  opt.max_iterations = cfg.max_iterations;
  opt.tolerance = std::min(cfg.tolerance, 1e-9);
  opt.seed = cfg.seed;
  opt.threads = cfg.threads;
  return opt;
}

}  // namespace

ComplexMatrix haar_unitary(Index dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dimension must be positive");
  auto rng = rng_stream(seed, 0);
  return ginibre_unitary(dim, rng);
}

ExperimentReport superadditivity_qutrit(const OptimizerConfig& cfg) {
  const Stopwatch clock;
  ExperimentReport rep;
  rep.name = "superadditivity-qutrit";
  rep.inputs = {{"restarts", static_cast<double>(cfg.restarts)},
                {"seed", static_cast<double>(cfg.seed)}};

  const auto blocks = qutrit_blocks();
  const ComplexVector phi2 = mes(3, 2);
  const double log3 = std::log2(3.0);

  // Certificate part: the three outputs (I (x) V_i) Phi2 are orthogonal.
  std::vector<ComplexVector> outs;
  outs.reserve(blocks.size());
  const ComplexMatrix eye3 = ComplexMatrix::Identity(3, 3);
  for (const auto& v : blocks) outs.push_back(kron(eye3, v) * phi2);
  const double gram = max_gram_deviation(outs);
  add(rep, "gram_deviation", gram, Bound::exact, 1e-12, true, gram <= 1e-12);

  // The same outputs must fall out of the grouped interaction physically:
  // a swap on the first pair of legs hands the helper's E' half to the
  // receiver while the controlled block acts on the paired half.
  const BipartiteUnitary wg = tensor_bipartite(swap_operator(3, 3), controlled_unitary(blocks));
  double proto = 0.0;
  std::vector<ComplexMatrix> projectors;
  for (Index i = 0; i < 3; ++i) {
    const ComplexVector alpha = kron(basis_state(3, 0), basis_state(3, i));
    const ComplexMatrix rho = pure_input_output(wg, alpha, phi2);
    const ComplexMatrix proj = outs[static_cast<std::size_t>(i)] *
                               outs[static_cast<std::size_t>(i)].adjoint();
    proto = std::max(proto, (rho - proj).cwiseAbs().maxCoeff());
    projectors.push_back(proj);
  }
  add(rep, "protocol_deviation", proto, Bound::exact, 1e-10, true, proto <= 1e-10);

  const auto paired = holevo_chi_fixed_states(projectors);
  add(rep, "paired_rate", paired.chi, Bound::exact, 1e-9, true,
      std::abs(paired.chi - log3) <= 1e-9);

  // Evidence part: the standalone interaction stays below log2(3).  The
  // search value is a lower bound, so the margin is an upper bound on the
  // true gap; only its sign is asserted.
  const auto solo = controlled_capacity(blocks, /*entangled_env=*/false, cfg);
  add(rep, "standalone_chi", solo.bits, solo.bound, 0.0, false);
  const double margin = log3 - solo.bits;
  add(rep, "superadditivity_margin", margin, Bound::upper, 0.0, true, margin > 0.0);

  rep.runtime_seconds = clock.seconds();
  return rep;
}

ExperimentReport superadditivity_weyl(Index d, const OptimizerConfig& cfg) {
  if (d < 2 || d > 3)
    throw std::invalid_argument("superadditivity_weyl: dimension must be 2 or 3");
  const Stopwatch clock;
  ExperimentReport rep;
  rep.name = "superadditivity-weyl";
  rep.inputs = {{"d", static_cast<double>(d)},
                {"restarts", static_cast<double>(cfg.restarts)},
                {"seed", static_cast<double>(cfg.seed)}};
  const double logd = std::log2(static_cast<double>(d));

  // Constructive standalone achiever: uniform weight on the control basis
  // with a fixed environment state saturates the output-dimension ceiling.
  const BipartiteUnitary vc = weyl_controlled(d);
  std::vector<ComplexMatrix> solo_outs;
  solo_outs.reserve(static_cast<std::size_t>(d * d));
  for (Index l = 0; l < d * d; ++l)
    solo_outs.push_back(pure_input_output(vc, basis_state(d * d, l), basis_state(d, 0)));
  const auto solo = holevo_chi_fixed_states(solo_outs);
  add(rep, "standalone_chi", solo.chi, Bound::exact, 1e-6, true,
      std::abs(solo.chi - logd) <= 1e-6);

  // Searched value for comparison.  The control register dephases through
  // the discarded leg, so the block-form optimizer computes the same
  // passive-helper capacity as the full interaction at a fraction of the cost.
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(d * d));
  for (Index l = 0; l < d * d; ++l) blocks.push_back(weyl(d, l / d, l % d));
  const auto searched = controlled_capacity(blocks, /*entangled_env=*/false, cfg);
  add(rep, "standalone_search", searched.bits, searched.bound, 0.0, false);

  // Paired protocol: the d^2 outputs (I (x) W(x,z)) Phi_d are orthonormal.
  const ComplexVector phid = mes(d, d);
  const BipartiteUnitary wg = tensor_bipartite(swap_operator(d, d), vc);
  const ComplexMatrix eyed = ComplexMatrix::Identity(d, d);
  std::vector<ComplexVector> outs;
  std::vector<ComplexMatrix> projectors;
  double proto = 0.0;
  for (Index l = 0; l < d * d; ++l) {
    const ComplexVector psi = kron(eyed, weyl(d, l / d, l % d)) * phid;
    const ComplexVector alpha = kron(basis_state(d, 0), basis_state(d * d, l));
    const ComplexMatrix rho = pure_input_output(wg, alpha, phid);
    proto = std::max(proto, (rho - ComplexMatrix(psi * psi.adjoint())).cwiseAbs().maxCoeff());
    outs.push_back(psi);
    projectors.push_back(psi * psi.adjoint());
  }
  const double gram = max_gram_deviation(outs);
  add(rep, "gram_deviation", gram, Bound::exact, 1e-12, true, gram <= 1e-12);
  add(rep, "protocol_deviation", proto, Bound::exact, 1e-10, true, proto <= 1e-10);

  const auto paired = holevo_chi_fixed_states(projectors);
  add(rep, "paired_rate", paired.chi, Bound::exact, 1e-9, true,
      std::abs(paired.chi - 2.0 * logd) <= 1e-9);

  rep.runtime_seconds = clock.seconds();
  return rep;
}

ExperimentReport conjugate_pair_conferencing(Index d, std::uint64_t seed,
                                             const OptimizerConfig& cfg) {
  if (d < 2 || d > 3)
    throw std::invalid_argument("conjugate_pair_conferencing: dimension must be 2 or 3");
  const Stopwatch clock;
  ExperimentReport rep;
  rep.name = "conjugate-pair";
  rep.inputs = {{"d", static_cast<double>(d)},
                {"seed", static_cast<double>(seed)},
                {"restarts", static_cast<double>(cfg.restarts)}};
  const double logd = std::log2(static_cast<double>(d));

  const ComplexMatrix v = haar_unitary(d * d, seed);
  const BipartiteUnitary vb(v, d, d, d, d);
  const BipartiteUnitary vconj(v.conjugate(), d, d, d, d);
  const BipartiteUnitary wg = tensor_bipartite(vb, vconj);
  const ComplexVector phi = mes(d, d);

  // The grouped pair fixes the full pairing across both legs exactly.
  const ComplexVector psi_in = kron(phi, phi);
  const double fp = (wg.matrix() * psi_in - psi_in).norm();
  add(rep, "fixed_point_deviation", fp, Bound::exact, 1e-10, true, fp <= 1e-10);

  // Entangled product input across the pair: output entropy collapses to 0,
  // witnessing that the paired minimum output entropy vanishes.
  const ComplexMatrix rho = pure_input_output(wg, phi, phi);
  const double s = detail::entropy_bits(rho);
  add(rep, "paired_output_entropy", s, Bound::upper, 1e-9, true, s <= 1e-9);
  add(rep, "paired_rate_augmented", 2.0 * logd, Bound::exact, 1e-9, false);

  // Single-factor ledger: a searched minimum-entropy value (upper bound),
  // the augmented factor rate it implies, and the expectation threshold the
  // factor is compared against.  Single samples may sit on either side,
  // so these are recorded, not asserted.
  const auto solo = min_output_entropy(vb, cfg);
  add(rep, "single_min_entropy", solo.bits, solo.bound, 0.0, false);
  add(rep, "single_rate_augmented", logd - solo.bits, Bound::lower, 0.0, false);
  add(rep, "expectation_threshold", logd - 1.0 / kLn2 - 1.0, Bound::exact, 0.0, false);
  add(rep, "factor_rate_ceiling", 1.0 / kLn2 + 1.0, Bound::exact, 0.0, false);

  rep.runtime_seconds = clock.seconds();
  return rep;
}

ExperimentReport haar_min_entropy_stats(Index d, int samples, std::uint64_t seed,
                                        const OptimizerConfig& cfg) {
  if (d < 2 || d > 3)
    throw std::invalid_argument("haar_min_entropy_stats: dimension must be 2 or 3");
  if (samples < 10)
    throw std::invalid_argument("haar_min_entropy_stats: need at least 10 samples");
  const Stopwatch clock;
  ExperimentReport rep;
  rep.name = "minent-stats";
  rep.inputs = {{"d", static_cast<double>(d)},
                {"samples", static_cast<double>(samples)},
                {"seed", static_cast<double>(seed)},
                {"restarts", static_cast<double>(cfg.restarts)}};
  const double logd = std::log2(static_cast<double>(d));

  rep.samples.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const ComplexMatrix v = haar_unitary(d * d, seed + static_cast<std::uint64_t>(i));
    const auto est = min_output_entropy(BipartiteUnitary(v, d, d, d, d), cfg);
    rep.samples.push_back(est.bits);
  }
  double mean = 0.0;
  double lo = rep.samples.front();
  double hi = rep.samples.front();
  for (const double x : rep.samples) {
    mean += x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  mean /= static_cast<double>(samples);

  // The expectation bound is vacuous at desk scale (negative for d <= 3),
  // so the only assertion is the trivial floor; the statistics themselves
  // are the deliverable.
  const double bound = logd - 1.0 / kLn2 - 1.0;
  add(rep, "mean_min_entropy", mean, Bound::upper, 1e-9, true,
      mean >= std::max(0.0, bound) - 1e-9);
  add(rep, "min_min_entropy", lo, Bound::upper, 0.0, false);
  add(rep, "max_min_entropy", hi, Bound::upper, 0.0, false);
  add(rep, "expectation_bound", bound, Bound::exact, 0.0, false);
  add(rep, "mean_capacity_ceiling", logd - mean, Bound::lower, 0.0, false);
  add(rep, "remark_constant", 1.0 + 1.0 / kLn2, Bound::exact, 0.0, false);

  rep.runtime_seconds = clock.seconds();
  return rep;
}

ExperimentReport ancilla_equality_sweep(int samples, std::uint64_t seed,
                                        const OptimizerConfig& cfg) {
  if (samples < 1) throw std::invalid_argument("ancilla_equality_sweep: need at least 1 sample");
  const Stopwatch clock;
  ExperimentReport rep;
  rep.name = "ancilla-equality";
  rep.inputs = {{"samples", static_cast<double>(samples)},
                {"seed", static_cast<double>(seed)},
                {"restarts", static_cast<double>(cfg.restarts)}};

  const OptimizeOptions opt = sphere_options(cfg);
  const ComplexMatrix eye2 = ComplexMatrix::Identity(2, 2);
  double max_gap = 0.0;
  double mean_gap = 0.0;

  for (int t = 0; t < samples; ++t) {
    auto rng = rng_stream(seed, static_cast<std::uint64_t>(t));
    ComplexMatrix u1 = ginibre_unitary(2, rng);
    u1 /= std::sqrt(u1.determinant());
    ComplexMatrix u2 = ginibre_unitary(2, rng);
    u2 /= std::sqrt(u2.determinant());
    const double p1 = uniform01(rng);
    const std::array<double, 2> p{p1, 1.0 - p1};

    const auto plain = maximize_on_spheres(
        {4},
        [&](const RealVector& x) {
          const ComplexVector mu = block_to_state(x, 0, 4);
          const ComplexVector a = u1 * mu;
          const ComplexVector b = u2 * mu;
          const ComplexMatrix rho = p[0] * (a * a.adjoint()) + p[1] * (b * b.adjoint());
          return detail::entropy_bits(rho);
        },
        opt, {pack_one(basis_state(2, 0)), pack_one(uniform_state(2))});

    const ComplexMatrix k1 = kron(eye2, u1);
    const ComplexMatrix k2 = kron(eye2, u2);
    const auto assisted = maximize_on_spheres(
        {8},
        [&](const RealVector& x) {
          const ComplexVector gamma = block_to_state(x, 0, 8);
          const ComplexVector a = k1 * gamma;
          const ComplexVector b = k2 * gamma;
          const ComplexMatrix rho = p[0] * (a * a.adjoint()) + p[1] * (b * b.adjoint());
          return detail::entropy_bits(rho);
        },
        opt, {pack_one(basis_state(4, 0)), pack_one(uniform_state(4)), pack_one(mes(2, 2))});

    const double gap = assisted.value - plain.value;
    rep.samples.push_back(gap);
    max_gap = std::max(max_gap, std::abs(gap));
    mean_gap += std::abs(gap);
  }
  mean_gap /= static_cast<double>(samples);

  add(rep, "max_abs_gap", max_gap, Bound::exact, 2e-4, true, max_gap <= 2e-4);
  add(rep, "mean_abs_gap", mean_gap, Bound::exact, 0.0, false);

  rep.runtime_seconds = clock.seconds();
  return rep;
}

}  // namespace envcap
