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

// Shared construction helpers for the unit tests.  Everything is seeded so
// test runs are bit-for-bit repeatable.

#pragma once

#include "envcap/experiments.hpp"
#include "envcap/optimize.hpp"
#include "envcap/tensor.hpp"

#include <cstdint>

namespace envcap::testing {

inline ComplexVector basis_state(Index dim, Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v[k] = 1.0;
  return v;
}

inline ComplexVector random_pure(Index dim, std::uint64_t seed) {
  auto rng = rng_stream(seed, 0);
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double re = standard_normal(rng);
    const double im = standard_normal(rng);
    v[i] = Complex(re, im);
  }
  v.normalize();
  return v;
}

inline DensityOperator random_density(Index dim, std::uint64_t seed, DimSpec dims = {}) {
  auto rng = rng_stream(seed, 1);
  ComplexMatrix g(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      const double re = standard_normal(rng);
      const double im = standard_normal(rng);
      g(r, c) = Complex(re, im);
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  if (dims.empty()) dims = {dim};
  return DensityOperator(std::move(rho), std::move(dims));
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace envcap::testing
