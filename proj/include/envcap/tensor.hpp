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
 * @file tensor.hpp
 * @brief Dense complex linear algebra primitives for multipartite systems.
 *
 * All tensor indices follow the row-major, first-factor-slow convention:
 * for dims {d0, d1, ...} the flat index of (i0, i1, ...) is
 * i0 * (d1 * d2 * ...) + i1 * (d2 * ...) + ...  Matrices are dense,
 * column-major in memory (Eigen default); the index convention above only
 * fixes how subsystem labels map to row/column positions.
 */

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace envcap {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Ordered subsystem dimensions of a multipartite space.
using DimSpec = std::vector<Index>;

/// Product of the dimensions in @p dims (1 for an empty list).
Index total_dim(const DimSpec& dims);

// Validation tolerances, pinned project-wide.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kNormTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-10;

/**
 * Density operator with an attached dimension layout.
 *
 * Construction validates Hermiticity (entrywise, 1e-10), unit trace
 * (1e-10) and positivity (smallest eigenvalue >= -1e-10) and throws
 * std::invalid_argument when any of them fails.
 */
class DensityOperator {
 public:
  DensityOperator(ComplexMatrix matrix, DimSpec dims);

  const ComplexMatrix& matrix() const { return matrix_; }
  const DimSpec& dims() const { return dims_; }
  Index dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
  DimSpec dims_;
};

/**
 * Unit-norm pure state with an attached dimension layout.  Norm is
 * validated to 1e-12; the vector is not renormalized silently.
 */
class PureState {
 public:
  PureState(ComplexVector vector, DimSpec dims);

  const ComplexVector& vector() const { return vector_; }
  const DimSpec& dims() const { return dims_; }
  Index dim() const { return vector_.size(); }

  /// Rank-one projector |psi><psi| as a density operator.
  DensityOperator projector() const;

 private:
  ComplexVector vector_;
  DimSpec dims_;
};

/// Kronecker product, first factor slow.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

/**
 * Partial trace over the subsystems NOT listed in @p keep.
 *
 * @param m     square matrix on the full space prod(dims)
 * @param dims  subsystem dimensions, first factor slow
 * @param keep  strictly increasing subsystem indices to keep
 * @return matrix on the kept subsystems, original relative order
 *
 * Keeping every subsystem returns @p m unchanged; keeping none returns
 * the 1x1 matrix holding tr(m).  Throws std::invalid_argument on shape
 * mismatch, out-of-range or duplicated indices.
 */
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSpec& dims,
                            const std::vector<int>& keep);

struct EigenDecomposition {
  RealVector values;      ///< descending
  ComplexMatrix vectors;  ///< orthonormal columns, values(k) <-> vectors.col(k)
};

/**
 * Eigendecomposition of a Hermitian matrix (validated to 1e-10).
 *
 * Eigenvalues are returned in descending order.  For reproducibility the
 * result is made deterministic: each eigenvector's phase is fixed so its
 * largest-magnitude entry is real positive, and eigenvectors inside a
 * degenerate cluster (values within 1e-12) are ordered lexicographically
 * by rounded components.
 */
EigenDecomposition hermitian_eigen(const ComplexMatrix& m);

/// True when m is square and max|m^dag m - I| <= tol.
bool unitary_check(const ComplexMatrix& m, double tol = kUnitaryTol);

namespace detail {

/// Eigenvalues of (m + m^dag)/2 without the Hermiticity validation or the
/// deterministic ordering; ascending (Eigen native).  Hot-path helper.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

}  // namespace detail

}  // namespace envcap
