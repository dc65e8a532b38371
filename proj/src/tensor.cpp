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

#include "envcap/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace envcap {

Index total_dim(const DimSpec& dims) {
  Index n = 1;
  for (Index d : dims) {
    if (d <= 0) throw std::invalid_argument("subsystem dimension must be positive");
    n *= d;
  }
  return n;
}

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

double hermiticity_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix, DimSpec dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  require(matrix_.rows() == matrix_.cols(), "density operator must be square");
  require(total_dim(dims_) == matrix_.rows(),
          "density operator dims do not match matrix size");
  require(hermiticity_defect(matrix_) <= kHermitianTol,
          "density operator is not Hermitian within 1e-10");
  require(std::abs(matrix_.trace() - Complex(1.0, 0.0)) <= kTraceTol,
          "density operator trace differs from 1 beyond 1e-10");
  const RealVector ev = detail::hermitian_eigenvalues(matrix_);
  require(ev.minCoeff() >= -kPositivityTol,
          "density operator has an eigenvalue below -1e-10");
}

PureState::PureState(ComplexVector vector, DimSpec dims)
    : vector_(std::move(vector)), dims_(std::move(dims)) {
  require(total_dim(dims_) == vector_.size(),
          "pure state dims do not match vector size");
  require(std::abs(vector_.norm() - 1.0) <= kNormTol,
          "pure state norm differs from 1 beyond 1e-12");
}

DensityOperator PureState::projector() const {
  return DensityOperator(vector_ * vector_.adjoint(), dims_);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims,
                            const std::vector<int>& keep) {
  const Index n = total_dim(dims);
  require(m.rows() == n && m.cols() == n,
          "partial_trace: matrix size does not match dims");
  const int k = static_cast<int>(dims.size());
  std::vector<bool> kept(dims.size(), false);
  int prev = -1;
  for (int idx : keep) {
    require(idx >= 0 && idx < k, "partial_trace: keep index out of range");
    require(idx > prev, "partial_trace: keep indices must be strictly increasing");
    kept[static_cast<std::size_t>(idx)] = true;
    prev = idx;
  }

  // Row-major strides: last subsystem fastest.
  std::vector<Index> stride(dims.size());
  Index acc = 1;
  for (int i = k - 1; i >= 0; --i) {
    stride[static_cast<std::size_t>(i)] = acc;
    acc *= dims[static_cast<std::size_t>(i)];
  }

  std::vector<int> kept_idx, traced_idx;
  for (int i = 0; i < k; ++i)
    (kept[static_cast<std::size_t>(i)] ? kept_idx : traced_idx).push_back(i);

  Index dim_keep = 1, dim_traced = 1;
  for (int i : kept_idx) dim_keep *= dims[static_cast<std::size_t>(i)];
  for (int i : traced_idx) dim_traced *= dims[static_cast<std::size_t>(i)];

  // Flat offset of a composite index within the kept (resp. traced) group.
  auto offsets = [&](const std::vector<int>& group, Index dim_group) {
    std::vector<Index> table(static_cast<std::size_t>(dim_group));
    for (Index flat = 0; flat < dim_group; ++flat) {
      Index rest = flat, off = 0;
      for (auto it = group.rbegin(); it != group.rend(); ++it) {
        const Index d = dims[static_cast<std::size_t>(*it)];
        off += (rest % d) * stride[static_cast<std::size_t>(*it)];
        rest /= d;
      }
      table[static_cast<std::size_t>(flat)] = off;
    }
    return table;
  };
  const std::vector<Index> keep_off = offsets(kept_idx, dim_keep);
  const std::vector<Index> trace_off = offsets(traced_idx, dim_traced);

  ComplexMatrix out = ComplexMatrix::Zero(dim_keep, dim_keep);
  for (Index r = 0; r < dim_keep; ++r)
    for (Index c = 0; c < dim_keep; ++c) {
      Complex sum = 0.0;
      for (Index t = 0; t < dim_traced; ++t)
        sum += m(keep_off[static_cast<std::size_t>(r)] + trace_off[static_cast<std::size_t>(t)],
                 keep_off[static_cast<std::size_t>(c)] + trace_off[static_cast<std::size_t>(t)]);
      out(r, c) = sum;
    }
  return out;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& m) {
  require(m.rows() == m.cols(), "hermitian_eigen: matrix must be square");
  require(hermiticity_defect(m) <= kHermitianTol,
          "hermitian_eigen: matrix is not Hermitian within 1e-10");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigen: eigensolver failed");

  const Index n = m.rows();
  RealVector vals = solver.eigenvalues();
  ComplexMatrix vecs = solver.eigenvectors();

  // Fix each eigenvector's global phase: largest-magnitude entry real positive.
  for (Index j = 0; j < n; ++j) {
    Index arg = 0;
    double best = -1.0;
    for (Index i = 0; i < n; ++i) {
      const double a = std::abs(vecs(i, j));
      if (a > best + 1e-12) {
        best = a;
        arg = i;
      }
    }
    const Complex z = vecs(arg, j);
    if (std::abs(z) > 0) vecs.col(j) *= std::conj(z) / std::abs(z);
  }

  // Descending order; ties (within 1e-12) broken lexicographically by
  // rounded eigenvector components so identical inputs order identically.
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  auto rounded = [&](Index col, Index row) {
    const Complex z = vecs(row, col);
    return std::make_pair(std::round(z.real() * 1e9), std::round(z.imag() * 1e9));
  };
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (std::abs(vals(a) - vals(b)) > 1e-12) return vals(a) > vals(b);
    for (Index i = 0; i < n; ++i) {
      const auto ra = rounded(a, i), rb = rounded(b, i);
      if (ra != rb) return ra < rb;
    }
    return false;
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    out.values(j) = vals(order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = vecs.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

bool unitary_check(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix g = m.adjoint() * m;
  return (g - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

namespace detail {

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      ComplexMatrix(0.5 * (m + m.adjoint())), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace detail

}  // namespace envcap
