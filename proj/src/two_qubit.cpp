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

#include "envcap/two_qubit.hpp"

#include "envcap/qinfo.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace envcap {

namespace {

constexpr double kPi = std::numbers::pi;

const ComplexMatrix& magic_matrix() {
  static const ComplexMatrix m = [] {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    ComplexMatrix out(4, 4);
    out.col(0) << Complex(s, 0), 0, 0, Complex(s, 0);
    out.col(1) << -i * s, 0, 0, i * s;
    out.col(2) << 0, Complex(s, 0), Complex(-s, 0), 0;
    out.col(3) << 0, -i * s, -i * s, 0;
    return out;
  }();
  return m;
}

std::array<double, 4> lambdas_of(const KrausCiracParams& p) {
  return {(p.alpha_x - p.alpha_y + p.alpha_z) / 2.0, (-p.alpha_x + p.alpha_y + p.alpha_z) / 2.0,
          (-p.alpha_x - p.alpha_y - p.alpha_z) / 2.0, (p.alpha_x + p.alpha_y - p.alpha_z) / 2.0};
}

void require_two_qubit(const BipartiteUnitary& u, const char* where) {
  if (u.dim_a() != 2 || u.dim_e() != 2 || u.dim_b() != 2 || u.dim_f() != 2)
    throw std::invalid_argument(std::string(where) + ": interaction must be 2x2 -> 2x2");
}

ComplexMatrix reshape_2x2(const ComplexVector& v) {
  ComplexMatrix m(2, 2);
  m << v[0], v[1], v[2], v[3];
  return m;
}

}  // namespace

std::vector<PureState> magic_basis() {
  const ComplexMatrix& m = magic_matrix();
  std::vector<PureState> out;
  out.reserve(4);
  for (Index k = 0; k < 4; ++k) out.emplace_back(ComplexVector(m.col(k)), DimSpec{2, 2});
  return out;
}

BipartiteUnitary canonical_unitary(const KrausCiracParams& p) {
  const auto lambda = lambdas_of(p);
  ComplexVector phases(4);
  for (Index k = 0; k < 4; ++k) phases[k] = std::polar(1.0, -lambda[static_cast<std::size_t>(k)]);
  const ComplexMatrix& m = magic_matrix();
  ComplexMatrix u = m * phases.asDiagonal() * m.adjoint();
  return BipartiteUnitary(std::move(u), 2, 2, 2, 2);
}

KrausCiracParams kraus_cirac_angles(const BipartiteUnitary& u) {
  require_two_qubit(u, "kraus_cirac_angles");

  // Normalize the determinant away; the remaining fourth-root ambiguity is
  // handled by the half-turn branch enumeration below.
  const Complex det = u.matrix().determinant();
  const ComplexMatrix su = u.matrix() / std::pow(det, 0.25);
  const ComplexMatrix& mb = magic_matrix();
  const ComplexMatrix m = mb.adjoint() * su * mb;
  const ComplexMatrix m2 = m.transpose() * m;

  Eigen::ComplexEigenSolver<ComplexMatrix> ces;
  ces.compute(m2, /*computeEigenvectors=*/false);
  std::array<double, 4> theta{};
  for (Index k = 0; k < 4; ++k) theta[static_cast<std::size_t>(k)] = std::arg(ces.eigenvalues()[k]);

  // Each eigenvalue e^{-2 i lambda} pins lambda modulo pi; all lambdas of a
  // tetrahedron point live in [-3pi/4, pi/2] and sum to zero, which singles
  // out one assignment among the shifted representatives.
  constexpr double kWindowLo = -3.0 * kPi / 4.0 - 1e-6;
  constexpr double kWindowHi = kPi / 2.0 + 1e-6;
  constexpr double kRegionTol = 1e-7;

  std::vector<std::array<double, 3>> found;
  for (const double branch : {0.0, kPi / 2.0}) {
    std::array<std::vector<double>, 4> reps;
    for (std::size_t k = 0; k < 4; ++k) {
      const double base = -theta[k] / 2.0 - branch;
      for (const double cand : {base - kPi, base, base + kPi}) {
        if (cand >= kWindowLo && cand <= kWindowHi) reps[k].push_back(cand);
      }
    }
    for (const double l0 : reps[0])
      for (const double l1 : reps[1])
        for (const double l2 : reps[2])
          for (const double l3 : reps[3]) {
            if (std::abs(l0 + l1 + l2 + l3) > 1e-6) continue;
            std::array<double, 4> s{l0, l1, l2, l3};
            std::sort(s.begin(), s.end(), std::greater<>());
            double x = s[0] + s[1];
            double y = s[0] + s[2];
            double z = s[1] + s[2];
            if (x > kPi / 2.0 + kRegionTol || x < -kRegionTol) continue;
            if (y > x + kRegionTol || y < -kRegionTol) continue;
            if (std::abs(z) > y + kRegionTol) continue;
            if (z < 0.0) z = -z;  // conjugation equivalence
            x = std::clamp(x, 0.0, kPi / 2.0);
            y = std::clamp(y, 0.0, x);
            z = std::clamp(z, 0.0, y);
            found.push_back({x, y, z});
          }
  }

  if (found.empty())
    throw std::runtime_error("kraus_cirac_angles: spectrum admits no tetrahedron assignment");
  const auto close = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return std::abs(a[0] - b[0]) < 1e-6 && std::abs(a[1] - b[1]) < 1e-6 &&
           std::abs(a[2] - b[2]) < 1e-6;
  };
  for (const auto& cand : found) {
    if (!close(cand, found.front()))
      throw std::runtime_error("kraus_cirac_angles: ambiguous tetrahedron assignment");
  }
  return {found.front()[0], found.front()[1], found.front()[2]};
}

EdgeParameter controlled_edge_parameter(const ComplexMatrix& u0, const ComplexMatrix& u1) {
  for (const auto* u : {&u0, &u1}) {
    if (u->rows() != 2 || u->cols() != 2 || !unitary_check(*u))
      throw std::invalid_argument("controlled_edge_parameter: blocks must be 2x2 unitaries");
  }
  const ComplexMatrix s0 = u0 / std::sqrt(u0.determinant());
  const ComplexMatrix s1 = u1 / std::sqrt(u1.determinant());
  const double cos_t = std::clamp(std::abs((s0.adjoint() * s1).trace()) / 2.0, 0.0, 1.0);
  double t = std::acos(cos_t);
  if (t > kPi / 2.0) t = kPi - t;
  return {t, kPi / 2.0 - t};
}

double cq_capacity_closed_form(double u) {
  if (u < -1e-12 || u > kPi / 2.0 + 1e-12)
    throw std::invalid_argument("cq_capacity_closed_form: u must lie in [0, pi/2]");
  u = std::clamp(u, 0.0, kPi / 2.0);
  return binary_entropy(std::min(1.0, (1.0 + std::sin(u)) / 2.0));
}

std::pair<Complex, Complex> product_state_in_span(const PureState& phi0, const PureState& phi1) {
  for (const auto* p : {&phi0, &phi1}) {
    if (p->dims() != DimSpec{2, 2})
      throw std::invalid_argument("product_state_in_span: states must live on C^2 x C^2");
  }
  const ComplexMatrix m0 = reshape_2x2(phi0.vector());
  const ComplexMatrix m1 = reshape_2x2(phi1.vector());

  // det(c0 m0 + c1 m1) = a c0^2 + b c0 c1 + c c1^2.
  const Complex a = m0.determinant();
  const Complex c = m1.determinant();
  const Complex b =
      m0(0, 0) * m1(1, 1) + m1(0, 0) * m0(1, 1) - m0(0, 1) * m1(1, 0) - m1(0, 1) * m0(1, 0);

  std::vector<std::pair<Complex, Complex>> roots;
  if (std::abs(a) <= 1e-14) {
    roots.emplace_back(1.0, 0.0);
    if (std::abs(b) > 1e-14) roots.emplace_back(-c / b, 1.0);
  } else {
    const Complex disc = b * b - 4.0 * a * c;
    const Complex sq = std::sqrt(disc);
    // Citardauq-style split keeps both roots well conditioned.
    const Complex q = (std::real(std::conj(b) * sq) >= 0.0) ? -(b + sq) / 2.0 : -(b - sq) / 2.0;
    roots.emplace_back(q / a, 1.0);
    if (std::abs(q) > 1e-14) roots.emplace_back(1.0, c / q);
  }

  double best_ratio = std::numeric_limits<double>::infinity();
  std::pair<Complex, Complex> best{0.0, 0.0};
  for (const auto& [r0, r1] : roots) {
    const ComplexVector psi = r0 * phi0.vector() + r1 * phi1.vector();
    const double norm = psi.norm();
    if (norm <= 1e-9) continue;
    const Eigen::JacobiSVD<ComplexMatrix> svd(reshape_2x2(psi));
    const double ratio = svd.singularValues()(1) / svd.singularValues()(0);
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best = {r0 / norm, r1 / norm};
    }
  }
  if (!std::isfinite(best_ratio))
    throw std::invalid_argument("product_state_in_span: inputs are linearly dependent");

  Complex phase = (std::abs(best.first) > 1e-14) ? best.first / std::abs(best.first)
                                                 : best.second / std::abs(best.second);
  return {best.first / phase, best.second / phase};
}

ConferencingCode2Q conferencing_code_two_qubit(const BipartiteUnitary& u) {
  require_two_qubit(u, "conferencing_code_two_qubit");
  const ComplexMatrix udag = u.matrix().adjoint();

  ConferencingCode2Q code;
  for (Index b = 0; b < 2; ++b) {
    const ComplexVector chi0 = udag.col(b * 2 + 0);
    const ComplexVector chi1 = udag.col(b * 2 + 1);
    const auto [c0, c1] = product_state_in_span(PureState(chi0, {2, 2}), PureState(chi1, {2, 2}));
    const ComplexVector psi = c0 * chi0 + c1 * chi1;

    const Eigen::JacobiSVD<ComplexMatrix> svd(reshape_2x2(psi),
                                              Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(1) > 1e-9)
      throw std::runtime_error("conferencing_code_two_qubit: span root is not a product state");

    ComplexVector alpha = svd.matrixU().col(0);
    ComplexVector eta = svd.matrixV().col(0).conjugate();
    Index top = 0;
    alpha.cwiseAbs().maxCoeff(&top);
    const Complex ph = alpha[top] / std::abs(alpha[top]);
    alpha /= ph;
    eta *= ph;
    alpha.normalize();
    eta.normalize();

    code.sender_inputs.emplace_back(alpha, DimSpec{2});
    code.helper_inputs.emplace_back(eta, DimSpec{2});
    code.outputs.push_back(pure_input_output(u, alpha, eta));
    code.weights.emplace_back(c0, c1);
  }

  if (trace_norm(code.outputs[0] - code.outputs[1]) < 2.0 - 1e-9)
    throw std::runtime_error("conferencing_code_two_qubit: outputs are not orthogonal");
  return code;
}

}  // namespace envcap
