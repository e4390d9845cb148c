// Copyright 2026 The QSE Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex linear algebra for exact simulation of small spin systems.
//
// Matrices are stored densely in row-major order. Dimensions in this project
// never exceed 2^(N+1) for a handful of bath spins, so there is no sparse
// path. All functions are pure.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace qse {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;
using RealVector = Eigen::VectorXd;

/// Eigendecomposition of a Hermitian matrix: eigenvalues ascending, the
/// eigenvectors are the (orthonormal) columns of `eigenvectors`.
struct HermitianEig {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Default tolerance for the Hermiticity precondition (relative Frobenius).
inline constexpr double kHermitianTolerance = 1e-8;
/// Eigenvalues in [-kPsdClamp, 0) are treated as round-off and clamped to zero.
inline constexpr double kPsdClamp = 1e-10;

ComplexMatrix identity(std::size_t dim);

/// result[(i*b.rows()+k),(j*b.cols()+l)] = a[i,j]*b[k,l]
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// ||m - m^dagger||_F / ||m||_F, zero for the zero matrix.
double hermiticity_defect(const ComplexMatrix &m);

/// Throws NotHermitian (also for non-square input) or NoConvergence.
HermitianEig hermitian_eig(const ComplexMatrix &m);

/// exp(-i h t) for Hermitian h.
ComplexMatrix expm_i_hermitian(const ComplexMatrix &h, double t);

/// Principal square root of a positive-semidefinite Hermitian matrix.
/// Eigenvalues down to -kPsdClamp are clamped; below that NegativeEigenvalue.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &m);

/// Traces out the leading tensor factor of dimension `dim_first`.
/// Throws DimensionMismatch unless m is square with rows divisible by dim_first.
ComplexMatrix partial_trace_first(const ComplexMatrix &m, std::size_t dim_first);

/// Outer product |v><v|.
ComplexMatrix projector_onto(const ComplexVector &v);

}  // namespace qse
