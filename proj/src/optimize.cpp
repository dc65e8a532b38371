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

#include "envcap/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace envcap {

namespace {

// SplitMix64; decorrelates consecutive stream indices before seeding.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct StartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  RealVector x;
  long sweeps = 0;
};

void normalize_block(RealVector& x, int offset, int size) {
  const double n = x.segment(offset, size).norm();
  if (n <= 0) throw std::runtime_error("sphere block collapsed to zero");
  x.segment(offset, size) /= n;
}

/// One multi-start unit of work: coordinate-wise quadratic ascent with a
/// shrinking probe step, blocks renormalized after every move.
StartOutcome refine(const std::vector<int>& sizes, const std::vector<int>& offsets,
                    const std::function<double(const RealVector&)>& f, RealVector x,
                    const OptimizeOptions& opt) {
  StartOutcome out;
  double fx = f(x);
  double h = 0.25;
  long sweeps = 0;
  while (sweeps < opt.max_iterations) {
    const double f_before = fx;
    for (int b = 0; b < static_cast<int>(sizes.size()); ++b) {
      for (int k = 0; k < sizes[static_cast<std::size_t>(b)]; ++k) {
        const int coord = offsets[static_cast<std::size_t>(b)] + k;
        auto probe = [&](double t) {
          RealVector y = x;
          y(coord) += t;
          normalize_block(y, offsets[static_cast<std::size_t>(b)],
                          sizes[static_cast<std::size_t>(b)]);
          return std::make_pair(f(y), y);
        };
        auto [fp, xp] = probe(h);
        auto [fm, xm] = probe(-h);
        double best_f = fx;
        RealVector* best_x = nullptr;
        if (fp > best_f) { best_f = fp; best_x = &xp; }
        if (fm > best_f) { best_f = fm; best_x = &xm; }
        // Quadratic through (-h, 0, h); move to the vertex when concave.
        const double curv = fp + fm - 2.0 * fx;
        if (curv < 0) {
          double t = 0.5 * h * (fm - fp) / curv;
          t = std::clamp(t, -4.0 * h, 4.0 * h);
          auto [fv, xv] = probe(t);
          if (fv > best_f) {
            best_f = fv;
            x = xv;
            fx = fv;
            continue;
          }
        }
        if (best_x != nullptr) {
          x = *best_x;
          fx = best_f;
        }
      }
    }
    ++sweeps;
    if (fx - f_before < opt.tolerance) {
      h *= 0.5;
      if (h < 1e-6) break;
    }
  }
  out.value = fx;
  out.x = std::move(x);
  out.sweeps = sweeps;
  return out;
}

}  // namespace

std::mt19937_64 rng_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix64(mix64(seed) ^ mix64(stream + 0x51ed2701ULL)));
}

double standard_normal(std::mt19937_64& rng) {
  // 53-bit uniforms in (0,1]; u1 > 0 keeps the log finite.
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RealVector random_sphere_point(int n, std::mt19937_64& rng) {
  RealVector x(n);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < n; ++i) x(i) = standard_normal(rng);
    norm2 = x.squaredNorm();
  } while (norm2 <= 0);
  return x / std::sqrt(norm2);
}

ComplexVector block_to_state(const RealVector& x, int offset, int block_size) {
  const int d = block_size / 2;
  ComplexVector psi(d);
  for (int i = 0; i < d; ++i) psi(i) = Complex(x(offset + i), x(offset + d + i));
  return psi;
}

void state_to_block(const ComplexVector& psi, RealVector& x, int offset) {
  const int d = static_cast<int>(psi.size());
  for (int i = 0; i < d; ++i) {
    x(offset + i) = psi(i).real();
    x(offset + d + i) = psi(i).imag();
  }
}

SphereSearchResult maximize_on_spheres(
    const std::vector<int>& block_sizes,
    const std::function<double(const RealVector&)>& objective,
    const OptimizeOptions& opt, const std::vector<RealVector>& structured_starts) {
  if (block_sizes.empty()) throw std::invalid_argument("no sphere blocks given");
  int total = 0;
  std::vector<int> offsets;
  for (int s : block_sizes) {
    if (s < 2 || s % 2 != 0)
      throw std::invalid_argument("sphere block sizes must be even and >= 2");
    offsets.push_back(total);
    total += s;
  }

  const int n_starts = std::max<int>(opt.restarts, static_cast<int>(structured_starts.size()));
  auto make_start = [&](int idx) {
    RealVector x(total);
    if (idx < static_cast<int>(structured_starts.size())) {
      if (structured_starts[static_cast<std::size_t>(idx)].size() != total)
        throw std::invalid_argument("structured start has wrong length");
      x = structured_starts[static_cast<std::size_t>(idx)];
      for (std::size_t b = 0; b < block_sizes.size(); ++b)
        normalize_block(x, offsets[b], block_sizes[b]);
    } else {
      auto rng = rng_stream(opt.seed, static_cast<std::uint64_t>(idx));
      for (std::size_t b = 0; b < block_sizes.size(); ++b)
        x.segment(offsets[b], block_sizes[b]) = random_sphere_point(block_sizes[b], rng);
    }
    return x;
  };

  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(n_starts));
  const int workers = std::max(1, std::min(opt.threads, n_starts));
  if (workers == 1) {
    for (int i = 0; i < n_starts; ++i)
      outcomes[static_cast<std::size_t>(i)] =
          refine(block_sizes, offsets, objective, make_start(i), opt);
  } else {
    std::atomic<int> next{0};
    auto work = [&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n_starts) return;
        outcomes[static_cast<std::size_t>(i)] =
            refine(block_sizes, offsets, objective, make_start(i), opt);
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  SphereSearchResult result;
  for (int i = 0; i < n_starts; ++i) {
    const auto& o = outcomes[static_cast<std::size_t>(i)];
    result.iterations += o.sweeps;
    if (o.value > result.value || result.best_start < 0) {
      result.value = o.value;
      result.x = o.x;
      result.best_start = i;
    }
  }
  return result;
}

}  // namespace envcap
