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

#include "envcap/channels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace envcap {

namespace {

void require(bool cond, const char* what) {
  if (!cond) throw std::invalid_argument(what);
}

constexpr double kEigTol = 1e-12;

}  // namespace

BipartiteUnitary::BipartiteUnitary(ComplexMatrix w, Index dim_a, Index dim_e,
                                   Index dim_b, Index dim_f)
    : w_(std::move(w)), dim_a_(dim_a), dim_e_(dim_e), dim_b_(dim_b), dim_f_(dim_f) {
  require(dim_a_ > 0 && dim_e_ > 0 && dim_b_ > 0 && dim_f_ > 0,
          "bipartite unitary: dimensions must be positive");
  require(dim_a_ * dim_e_ == dim_b_ * dim_f_,
          "bipartite unitary: input and output dimensions differ");
  require(w_.rows() == dim_b_ * dim_f_ && w_.cols() == dim_a_ * dim_e_,
          "bipartite unitary: matrix shape does not match dims");
  require(unitary_check(w_, kUnitaryTol), "bipartite unitary: not unitary within 1e-10");
}

QuantumChannel::QuantumChannel(std::vector<ComplexMatrix> kraus)
    : kraus_(std::move(kraus)) {
  require(!kraus_.empty(), "channel: empty Kraus list");
  dim_out_ = kraus_[0].rows();
  dim_in_ = kraus_[0].cols();
  ComplexMatrix acc = ComplexMatrix::Zero(dim_in_, dim_in_);
  for (const auto& k : kraus_) {
    require(k.rows() == dim_out_ && k.cols() == dim_in_,
            "channel: inconsistent Kraus shapes");
    acc += k.adjoint() * k;
  }
  const double defect =
      (acc - ComplexMatrix::Identity(dim_in_, dim_in_)).cwiseAbs().maxCoeff();
  require(defect <= kKrausCompletenessTol,
          "channel: Kraus completeness violated beyond 1e-9");
}

QuantumChannel effective_channel(const BipartiteUnitary& w, const ComplexVector& eta) {
  require(eta.size() == w.dim_e(), "effective_channel: eta dimension mismatch");
  require(std::abs(eta.norm() - 1.0) <= kNormTol,
          "effective_channel: eta must be normalized");
  const Index da = w.dim_a(), de = w.dim_e(), db = w.dim_b(), df = w.dim_f();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(df));
  for (Index f = 0; f < df; ++f) {
    ComplexMatrix k(db, da);
    for (Index b = 0; b < db; ++b)
      for (Index a = 0; a < da; ++a) {
        Complex sum = 0.0;
        for (Index e = 0; e < de; ++e) sum += w.matrix()(b * df + f, a * de + e) * eta(e);
        k(b, a) = sum;
      }
    kraus.push_back(std::move(k));
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel entanglement_assisted_channel(const BipartiteUnitary& w,
                                             const DensityOperator& kappa) {
  require(kappa.dims().size() == 2, "assisted channel: kappa must carry dims {E, K}");
  const Index de = kappa.dims()[0], dk = kappa.dims()[1];
  require(de == w.dim_e(), "assisted channel: kappa E-dimension mismatch");
  const Index da = w.dim_a(), db = w.dim_b(), df = w.dim_f();

  // Purify kappa on (E ⊗ K) ⊗ P with P spanning its support.
  const EigenDecomposition ed = hermitian_eigen(kappa.matrix());
  std::vector<ComplexVector> branches;  // sqrt(s_p) |v_p>, one per purifier index
  for (Index p = 0; p < ed.values.size(); ++p) {
    if (ed.values(p) <= kEigTol) continue;
    branches.push_back(std::sqrt(ed.values(p)) * ed.vectors.col(p));
  }

  // One Kraus operator per (f, p): A -> B ⊗ K.
  std::vector<ComplexMatrix> kraus;
  for (const auto& branch : branches) {
    for (Index f = 0; f < df; ++f) {
      ComplexMatrix op(db * dk, da);
      for (Index b = 0; b < db; ++b)
        for (Index k = 0; k < dk; ++k)
          for (Index a = 0; a < da; ++a) {
            Complex sum = 0.0;
            for (Index e = 0; e < de; ++e)
              sum += w.matrix()(b * df + f, a * de + e) * branch(e * dk + k);
            op(b * dk + k, a) = sum;
          }
      kraus.push_back(std::move(op));
    }
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel effective_channel(const BipartiteUnitary& w, const DensityOperator& eta) {
  require(eta.dim() == w.dim_e(), "effective_channel: eta dimension mismatch");
  const DensityOperator padded(eta.matrix(), DimSpec{w.dim_e(), Index{1}});
  return entanglement_assisted_channel(w, padded);
}

ComplexMatrix apply_channel(const QuantumChannel& n, const ComplexMatrix& rho) {
  require(rho.rows() == n.dim_in() && rho.cols() == n.dim_in(),
          "apply_channel: state dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(n.dim_out(), n.dim_out());
  for (const auto& k : n.kraus()) out += k * rho * k.adjoint();
  return out;
}

ComplexMatrix conferencing_output(const BipartiteUnitary& w, const ComplexMatrix& alpha,
                                  const ComplexMatrix& eta) {
  require(alpha.rows() == w.dim_a() && alpha.cols() == w.dim_a(),
          "conferencing_output: alpha dimension mismatch");
  require(eta.rows() == w.dim_e() && eta.cols() == w.dim_e(),
          "conferencing_output: eta dimension mismatch");
  const ComplexMatrix joint = w.matrix() * kron(alpha, eta) * w.matrix().adjoint();
  return partial_trace(joint, {w.dim_b(), w.dim_f()}, {0});
}

ComplexMatrix pure_input_output(const BipartiteUnitary& w, const ComplexVector& alpha,
                                const ComplexVector& eta) {
  const ComplexVector phi = w.matrix() * kron(alpha, eta);
  // Reduce |phi><phi| on B ⊗ F to B: reshape to B x F and contract F.
  ComplexMatrix m(w.dim_b(), w.dim_f());
  for (Index b = 0; b < w.dim_b(); ++b)
    for (Index f = 0; f < w.dim_f(); ++f) m(b, f) = phi(b * w.dim_f() + f);
  return m * m.adjoint();
}

ComplexMatrix weyl(Index d, Index x, Index z) {
  require(d >= 1, "weyl: dimension must be positive");
  require(x >= 0 && x < d && z >= 0 && z < d, "weyl: indices out of range");
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  const double w0 = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (Index j = 0; j < d; ++j)
    m((x + j) % d, j) = std::polar(1.0, w0 * static_cast<double>(z * j));
  return m;
}

BipartiteUnitary controlled_unitary(std::span<const ComplexMatrix> blocks) {
  require(!blocks.empty(), "controlled_unitary: no blocks");
  const Index dc = static_cast<Index>(blocks.size());
  const Index db = blocks[0].rows();
  for (const auto& u : blocks)
    require(u.rows() == db && u.cols() == db && unitary_check(u, kUnitaryTol),
            "controlled_unitary: blocks must be unitary and equal-sized");
  ComplexMatrix w = ComplexMatrix::Zero(db * dc, dc * db);
  for (Index a = 0; a < dc; ++a)
    for (Index b = 0; b < db; ++b)
      for (Index e = 0; e < db; ++e) w(b * dc + a, a * db + e) = blocks[a](b, e);
  return BipartiteUnitary(std::move(w), dc, db, db, dc);
}

BipartiteUnitary swap_operator(Index dim_a, Index dim_e) {
  ComplexMatrix w = ComplexMatrix::Zero(dim_a * dim_e, dim_a * dim_e);
  for (Index a = 0; a < dim_a; ++a)
    for (Index e = 0; e < dim_e; ++e)
      // output (b, f) = (e, a); dimB = dim_e, dimF = dim_a
      w(e * dim_a + a, a * dim_e + e) = 1.0;
  return BipartiteUnitary(std::move(w), dim_a, dim_e, dim_e, dim_a);
}

BipartiteUnitary shor_augment(const BipartiteUnitary& w) {
  const Index d = w.dim_a();
  require(w.dim_e() == d && w.dim_b() == d && w.dim_f() == d,
          "shor_augment: all four legs must have equal dimension");
  const Index dl = d * d;
  std::vector<ComplexMatrix> weyls;
  weyls.reserve(static_cast<std::size_t>(dl));
  for (Index x = 0; x < d; ++x)
    for (Index z = 0; z < d; ++z) weyls.push_back(weyl(d, x, z));

  // Input (l, a, e), output (b, f, l); the shift on B is controlled by L.
  const Index dim_in = dl * d * d;
  ComplexMatrix m = ComplexMatrix::Zero(dim_in, dim_in);
  for (Index l = 0; l < dl; ++l) {
    const ComplexMatrix& g = weyls[static_cast<std::size_t>(l)];
    for (Index a = 0; a < d; ++a)
      for (Index e = 0; e < d; ++e)
        for (Index b = 0; b < d; ++b)
          for (Index f = 0; f < d; ++f) {
            Complex sum = 0.0;
            for (Index b0 = 0; b0 < d; ++b0)
              sum += g(b, b0) * w.matrix()(b0 * d + f, a * d + e);
            if (sum != Complex(0.0, 0.0))
              m(b * (d * dl) + f * dl + l, l * (d * d) + a * d + e) = sum;
          }
  }
  return BipartiteUnitary(std::move(m), dl * d, d, d, d * dl);
}

BipartiteUnitary tensor_bipartite(const BipartiteUnitary& w1, const BipartiteUnitary& w2) {
  const Index a1 = w1.dim_a(), e1 = w1.dim_e(), b1 = w1.dim_b(), f1 = w1.dim_f();
  const Index a2 = w2.dim_a(), e2 = w2.dim_e(), b2 = w2.dim_b(), f2 = w2.dim_f();
  ComplexMatrix m(b1 * b2 * f1 * f2, a1 * a2 * e1 * e2);
  for (Index i1 = 0; i1 < b1 * f1; ++i1) {
    const Index bb1 = i1 / f1, ff1 = i1 % f1;
    for (Index i2 = 0; i2 < b2 * f2; ++i2) {
      const Index bb2 = i2 / f2, ff2 = i2 % f2;
      const Index row = ((bb1 * b2 + bb2) * f1 + ff1) * f2 + ff2;
      for (Index j1 = 0; j1 < a1 * e1; ++j1) {
        const Index aa1 = j1 / e1, ee1 = j1 % e1;
        for (Index j2 = 0; j2 < a2 * e2; ++j2) {
          const Index aa2 = j2 / e2, ee2 = j2 % e2;
          const Index col = ((aa1 * a2 + aa2) * e1 + ee1) * e2 + ee2;
          m(row, col) = w1.matrix()(i1, j1) * w2.matrix()(i2, j2);
        }
      }
    }
  }
  return BipartiteUnitary(std::move(m), a1 * a2, e1 * e2, b1 * b2, f1 * f2);
}

bool is_classical_quantum(const QuantumChannel& n, const ComplexMatrix& basis) {
  const Index d = n.dim_in();
  ComplexMatrix b = basis;
  if (b.size() == 0) b = ComplexMatrix::Identity(d, d);
  require(b.rows() == d && b.cols() == d && unitary_check(b, kUnitaryTol),
          "is_classical_quantum: basis must be a unitary of the input dimension");
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      if (i == j) continue;
      const ComplexMatrix coherence = b.col(i) * b.col(j).adjoint();
      if (apply_channel(n, coherence).cwiseAbs().maxCoeff() > 1e-9) return false;
    }
  return true;
}

DensityOperator choi(const QuantumChannel& n) {
  const Index d = n.dim_in(), db = n.dim_out();
  ComplexMatrix c = ComplexMatrix::Zero(d * db, d * db);
  for (const auto& k : n.kraus())
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j)
        for (Index b = 0; b < db; ++b)
          for (Index bp = 0; bp < db; ++bp)
            c(i * db + b, j * db + bp) += k(b, i) * std::conj(k(bp, j));
  c /= static_cast<double>(d);
  return DensityOperator(std::move(c), DimSpec{d, db});
}

std::vector<ComplexMatrix> kraus_from_choi(const DensityOperator& c) {
  require(c.dims().size() == 2, "kraus_from_choi: choi must carry dims {in, out}");
  const Index d = c.dims()[0], db = c.dims()[1];
  const EigenDecomposition ed = hermitian_eigen(c.matrix());
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < ed.values.size(); ++k) {
    if (ed.values(k) <= kEigTol) continue;
    const double scale = std::sqrt(ed.values(k) * static_cast<double>(d));
    ComplexMatrix op(db, d);
    for (Index i = 0; i < d; ++i)
      for (Index b = 0; b < db; ++b) op(b, i) = scale * ed.vectors(i * db + b, k);
    kraus.push_back(std::move(op));
  }
  return kraus;
}

EbStatus is_entanglement_breaking(const QuantumChannel& n) {
  const DensityOperator c = choi(n);
  const Index d = n.dim_in(), db = n.dim_out();
  // Partial transpose on the reference system.
  ComplexMatrix pt(d * db, d * db);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index b = 0; b < db; ++b)
        for (Index bp = 0; bp < db; ++bp)
          pt(j * db + b, i * db + bp) = c.matrix()(i * db + b, j * db + bp);
  const double min_eig = detail::hermitian_eigenvalues(pt).minCoeff();
  if (min_eig < -kPositivityTol) return EbStatus::not_breaking;
  return (d * db <= 6) ? EbStatus::breaking : EbStatus::inconclusive;
}

std::vector<ComplexMatrix> qutrit_blocks() {
  ComplexMatrix v0 = ComplexMatrix::Identity(3, 3);
  ComplexMatrix v1 = ComplexMatrix::Zero(3, 3);
  v1(0, 1) = 1.0;
  v1(1, 0) = 1.0;
  v1(2, 2) = 1.0;
  ComplexMatrix v2 = ComplexMatrix::Identity(3, 3);
  v2(1, 1) = -1.0;
  return {v0, v1, v2};
}

BipartiteUnitary weyl_controlled(Index d) {
  require(d >= 2, "weyl_controlled: dimension must be at least 2");
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(static_cast<std::size_t>(d * d));
  for (Index x = 0; x < d; ++x)
    for (Index z = 0; z < d; ++z) blocks.push_back(weyl(d, x, z));
  return controlled_unitary(blocks);
}

bool is_swap_up_to_phase(const BipartiteUnitary& w) {
  if (w.dim_b() != w.dim_e() || w.dim_f() != w.dim_a()) return false;
  const BipartiteUnitary s = swap_operator(w.dim_a(), w.dim_e());
  // Phase from the first structurally nonzero entry of SWAP.
  Complex phase = 0.0;
  for (Index j = 0; j < s.matrix().cols() && phase == Complex(0.0, 0.0); ++j)
    for (Index i = 0; i < s.matrix().rows(); ++i)
      if (std::abs(s.matrix()(i, j)) > 0.5) {
        phase = w.matrix()(i, j);
        break;
      }
  if (std::abs(std::abs(phase) - 1.0) > kUnitaryTol) return false;
  return (w.matrix() - phase * s.matrix()).cwiseAbs().maxCoeff() <= kUnitaryTol;
}

}  // namespace envcap
