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
 * @file optimize.hpp
 * @brief Derivative-free maximization over products of unit spheres.
 *
 * Pure states on C^d are parametrized as unit vectors in R^{2d}
 * (real parts first, imaginary parts second).  Searches over several
 * states at once concatenate one such block per state; every block is
 * kept unit-norm independently.  The local refinement is a
 * coordinate-wise quadratic line search from multiple starts; all
 * randomness is drawn from per-start streams derived deterministically
 * from (seed, start index), so results are reproducible and independent
 * of how starts are scheduled across worker threads.
 */

#pragma once

#include "envcap/tensor.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace envcap {

struct OptimizeOptions {
  int restarts = 32;
  long max_iterations = 10000;  ///< coordinate sweeps per start
  double tolerance = 1e-9;      ///< sweep improvement below this shrinks the step
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SphereSearchResult {
  double value = 0.0;
  RealVector x;         ///< concatenated blocks, each unit-norm
  int best_start = -1;  ///< index into structured + random starts
  long iterations = 0;  ///< total coordinate sweeps across all starts
};

/**
 * Maximize @p objective over x in S^{b0-1} x S^{b1-1} x ...
 *
 * @param block_sizes       real length of each sphere block (2 * state dim)
 * @param objective         callable on the concatenated parameter vector
 * @param opt               restarts / iteration budget / seed / threads
 * @param structured_starts deterministic starts tried before the seeded
 *                          random ones; they count against opt.restarts
 *                          only if there are more of them than restarts
 *
 * Ties between starts resolve to the lowest start index.
 */
SphereSearchResult maximize_on_spheres(
    const std::vector<int>& block_sizes,
    const std::function<double(const RealVector&)>& objective,
    const OptimizeOptions& opt,
    const std::vector<RealVector>& structured_starts = {});

/// RNG stream deterministically derived from (seed, stream index).
std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream);

/// Standard normal deviate via Box-Muller on the engine's uniform bits.
/// Implemented by hand so sequences do not depend on the C++ library.
double standard_normal(std::mt19937_64& rng);

/// Uniform point on the unit sphere in R^n.
RealVector random_sphere_point(int n, std::mt19937_64& rng);

/// Interpret a real 2d-block as a complex d-vector (re block, then im block).
ComplexVector block_to_state(const RealVector& x, int offset, int block_size);

/// Inverse of block_to_state; writes into x at offset.
void state_to_block(const ComplexVector& psi, RealVector& x, int offset);

}  // namespace envcap
