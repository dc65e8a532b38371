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

#include "envcap/qinfo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace envcap {

namespace {

constexpr double kSupportTol = 1e-12;

double xlog2x(double x) { return x > 0 ? x * std::log2(x) : 0.0; }

ComplexMatrix apply_kraus_diff(std::span<const ComplexMatrix> k1,
                               std::span<const ComplexMatrix> k2,
                               const ComplexMatrix& rho) {
  ComplexMatrix out = ComplexMatrix::Zero(k1[0].rows(), k1[0].rows());
  for (const auto& k : k1) out += k * rho * k.adjoint();
  for (const auto& k : k2) out -= k * rho * k.adjoint();
  return out;
}

void check_kraus_pair(std::span<const ComplexMatrix> k1,
                      std::span<const ComplexMatrix> k2) {
  if (k1.empty() || k2.empty())
    throw std::invalid_argument("channel distance: empty Kraus list");
  if (k1[0].rows() != k2[0].rows() || k1[0].cols() != k2[0].cols())
    throw std::invalid_argument("channel distance: dimension mismatch");
}

}  // namespace

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double von_neumann_entropy(const DensityOperator& rho) {
  return detail::entropy_bits(rho.matrix());
}

double relative_entropy(const DensityOperator& a, const DensityOperator& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  const EigenDecomposition eb = hermitian_eigen(b.matrix());
  const Index n = a.dim();

  // Mass of a on the kernel of b decides support containment.
  double kernel_mass = 0.0;
  for (Index j = 0; j < n; ++j) {
    if (eb.values(j) <= kSupportTol) {
      const ComplexVector v = eb.vectors.col(j);
      kernel_mass += std::real(v.dot(a.matrix() * v));
    }
  }
  if (kernel_mass > kSupportTol)
    return std::numeric_limits<double>::infinity();

  double tr_a_log_b = 0.0;
  for (Index j = 0; j < n; ++j) {
    if (eb.values(j) <= kSupportTol) continue;
    const ComplexVector v = eb.vectors.col(j);
    const double w = std::max(0.0, std::real(v.dot(a.matrix() * v)));
    tr_a_log_b += w * std::log2(eb.values(j));
  }
  const RealVector ea = detail::hermitian_eigenvalues(a.matrix());
  double tr_a_log_a = 0.0;
  for (Index i = 0; i < n; ++i) tr_a_log_a += xlog2x(std::max(0.0, ea(i)));
  return tr_a_log_a - tr_a_log_b;
}

double mutual_information(const DensityOperator& rho, const std::vector<int>& cut_a) {
  const auto& dims = rho.dims();
  if (cut_a.empty() || cut_a.size() >= dims.size())
    throw std::invalid_argument("mutual_information: cut must be a proper nonempty subset");
  std::vector<int> cut_b;
  std::vector<bool> in_a(dims.size(), false);
  int prev = -1;
  for (int i : cut_a) {
    if (i <= prev || i < 0 || i >= static_cast<int>(dims.size()))
      throw std::invalid_argument("mutual_information: bad cut index");
    in_a[static_cast<std::size_t>(i)] = true;
    prev = i;
  }
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (!in_a[static_cast<std::size_t>(i)]) cut_b.push_back(i);

  const ComplexMatrix ra = partial_trace(rho.matrix(), dims, cut_a);
  const ComplexMatrix rb = partial_trace(rho.matrix(), dims, cut_b);
  return detail::entropy_bits(ra) + detail::entropy_bits(rb) -
         detail::entropy_bits(rho.matrix());
}

double trace_norm(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

namespace {

// Trace norm of a Hermitian matrix via its spectrum; faster than the SVD
// route and exact for the channel-difference outputs used below.
double trace_norm_hermitian(const ComplexMatrix& m) {
  return detail::hermitian_eigenvalues(m).cwiseAbs().sum();
}

}  // namespace

ChannelDistanceEstimate induced_trace_norm_lower_bound(
    std::span<const ComplexMatrix> kraus1, std::span<const ComplexMatrix> kraus2,
    const OptimizeOptions& opt) {
  check_kraus_pair(kraus1, kraus2);
  const int d = static_cast<int>(kraus1[0].cols());
  auto objective = [&](const RealVector& x) {
    const ComplexVector psi = block_to_state(x, 0, 2 * d);
    return trace_norm_hermitian(apply_kraus_diff(kraus1, kraus2, psi * psi.adjoint()));
  };
  const SphereSearchResult res = maximize_on_spheres({2 * d}, objective, opt);
  ChannelDistanceEstimate est;
  est.value = res.value;
  est.kind = "induced-trace-norm";
  est.witness = block_to_state(res.x, 0, 2 * d);
  return est;
}

ChannelDistanceEstimate diamond_distance_lower_bound(
    std::span<const ComplexMatrix> kraus1, std::span<const ComplexMatrix> kraus2,
    const OptimizeOptions& opt) {
  check_kraus_pair(kraus1, kraus2);
  const int d = static_cast<int>(kraus1[0].cols());
  const int dr = d;  // reference system of the same size is always enough

  auto objective = [&](const RealVector& x) {
    const ComplexVector psi = block_to_state(x, 0, 2 * d * dr);
    // (id ⊗ K) on |psi><psi| with psi reshaped R x A row-major.
    ComplexMatrix psi_m(dr, d);
    for (int r = 0; r < dr; ++r)
      for (int c = 0; c < d; ++c) psi_m(r, c) = psi(r * d + c);
    const Index db = kraus1[0].rows();
    ComplexMatrix out = ComplexMatrix::Zero(dr * db, dr * db);
    auto add = [&](std::span<const ComplexMatrix> ks, double sign) {
      for (const auto& k : ks) {
        const ComplexMatrix v = psi_m * k.transpose();  // R x B, rows indexed by R
        ComplexVector flat(dr * db);
        for (int r = 0; r < dr; ++r)
          for (Index b = 0; b < db; ++b) flat(r * db + b) = v(r, b);
        out += sign * (flat * flat.adjoint());
      }
    };
    add(kraus1, +1.0);
    add(kraus2, -1.0);
    return trace_norm_hermitian(out);
  };

  // Embed the no-ancilla witness as |0>_R ⊗ |w>_A so the diamond search
  // starts at least as high as the induced-norm estimate.
  const ChannelDistanceEstimate induced =
      induced_trace_norm_lower_bound(kraus1, kraus2, opt);
  RealVector seed_start = RealVector::Zero(2 * d * dr);
  ComplexVector embedded = ComplexVector::Zero(d * dr);
  embedded.head(d) = induced.witness;
  state_to_block(embedded, seed_start, 0);

  const SphereSearchResult res =
      maximize_on_spheres({2 * d * dr}, objective, opt, {seed_start});
  ChannelDistanceEstimate est;
  est.value = res.value;
  est.kind = "diamond-lower-bound";
  est.witness = block_to_state(res.x, 0, 2 * d * dr);
  return est;
}

namespace detail {

double entropy_bits(const RealVector& spectrum) {
  double s = 0.0;
  for (Index i = 0; i < spectrum.size(); ++i) s -= xlog2x(std::max(0.0, spectrum(i)));
  return std::max(0.0, s);
}

double entropy_bits(const ComplexMatrix& m) {
  return entropy_bits(hermitian_eigenvalues(m));
}

}  // namespace detail

}  // namespace envcap
