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

#include "qse/linalg.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {

ComplexMatrix identity(std::size_t dim) {
    return ComplexMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const Eigen::Index br = b.rows();
    const Eigen::Index bc = b.cols();
    ComplexMatrix result(a.rows() * br, a.cols() * bc);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            result.block(i * br, j * bc, br, bc) = a(i, j) * b;
        }
    }
    return result;
}

double hermiticity_defect(const ComplexMatrix &m) {
    const double norm = m.norm();
    if (norm == 0.0) {
        return 0.0;
    }
    return (m - m.adjoint()).norm() / norm;
}

HermitianEig hermitian_eig(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        std::ostringstream msg;
        msg << "hermitian_eig: matrix is " << m.rows() << "x" << m.cols() << ", not square";
        throw NotHermitian(msg.str());
    }
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTolerance) {
        std::ostringstream msg;
        msg << "hermitian_eig: relative anti-Hermitian part " << defect << " exceeds "
            << kHermitianTolerance;
        throw NotHermitian(msg.str());
    }
    // Symmetrize so the solver sees exactly Hermitian input.
    const Eigen::MatrixXcd sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw NoConvergence("hermitian_eig: eigensolver did not converge");
    }
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix &h, double t) {
    const HermitianEig eig = hermitian_eig(h);
    ComplexVector phases(eig.eigenvalues.size());
    for (Eigen::Index j = 0; j < phases.size(); ++j) {
        phases(j) = std::exp(Complex(0.0, -eig.eigenvalues(j) * t));
    }
    return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix &m) {
    const HermitianEig eig = hermitian_eig(m);
    RealVector roots(eig.eigenvalues.size());
    // Eigenvalues within the solver's backward error of zero are zero; their
    // square roots would otherwise leak ~1e-8 into the result.
    const double noise = static_cast<double>(roots.size()) * std::numeric_limits<double>::epsilon() *
                         eig.eigenvalues.cwiseAbs().maxCoeff();
    for (Eigen::Index j = 0; j < roots.size(); ++j) {
        const double lambda = eig.eigenvalues(j);
        if (lambda < -kPsdClamp) {
            std::ostringstream msg;
            msg << "matrix_sqrt_psd: eigenvalue " << lambda << " below -" << kPsdClamp;
            throw NegativeEigenvalue(msg.str());
        }
        roots(j) = lambda > noise ? std::sqrt(lambda) : 0.0;
    }
    return eig.eigenvectors * roots.cast<Complex>().asDiagonal() * eig.eigenvectors.adjoint();
}

ComplexMatrix partial_trace_first(const ComplexMatrix &m, std::size_t dim_first) {
    const auto first = static_cast<Eigen::Index>(dim_first);
    if (m.rows() != m.cols() || first == 0 || m.rows() % first != 0) {
        std::ostringstream msg;
        msg << "partial_trace_first: cannot split " << m.rows() << "x" << m.cols()
            << " matrix with leading factor " << dim_first;
        throw DimensionMismatch(msg.str());
    }
    const Eigen::Index rest = m.rows() / first;
    ComplexMatrix reduced = ComplexMatrix::Zero(rest, rest);
    for (Eigen::Index k = 0; k < first; ++k) {
        reduced += m.block(k * rest, k * rest, rest, rest);
    }
    return reduced;
}

ComplexMatrix projector_onto(const ComplexVector &v) {
    return v * v.adjoint();
}

}  // namespace qse
