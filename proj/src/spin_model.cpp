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

#include "qse/spin_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/SVD>

#include "qse/errors.hpp"

namespace qse {
namespace {

const Complex kI{0.0, 1.0};

ComplexMatrix pauli(Axis axis) {
    ComplexMatrix s(2, 2);
    switch (axis) {
        case Axis::x:
            s << 0.0, 1.0, 1.0, 0.0;
            break;
        case Axis::y:
            s << 0.0, -kI, kI, 0.0;
            break;
        case Axis::z:
            s << 1.0, 0.0, 0.0, -1.0;
            break;
    }
    return s;
}

// 1 ⊗ ... ⊗ op (at bath position k) ⊗ ... ⊗ 1 over the n_bath bath spins.
ComplexMatrix embed_bath_operator(const ComplexMatrix &op, std::size_t k, std::size_t n_bath) {
    ComplexMatrix result = identity(1);
    for (std::size_t j = 0; j < n_bath; ++j) {
        result = kron(result, j == k ? op : identity(2));
    }
    return result;
}

}  // namespace

ModelParams ModelParams::linear_chain(std::size_t n_bath, double tau) {
    ModelParams p;
    p.n_bath = n_bath;
    p.couplings.assign(n_bath, {1.0, 0.0, 0.0});
    p.omega = 0.5;
    p.tau = tau;
    return p;
}

std::size_t ModelParams::dim() const {
    return std::size_t{2} << n_bath;
}

void ModelParams::validate() const {
    if (couplings.size() != n_bath) {
        std::ostringstream msg;
        msg << "model.couplings: expected " << n_bath << " coupling vectors (n_bath), got "
            << couplings.size();
        throw ConfigError(msg.str());
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw ConfigError("model.tau: must be a positive finite time");
    }
    if (!std::isfinite(omega)) {
        throw ConfigError("model.omega: must be finite");
    }
    if (n_bath > 10) {
        throw ConfigError("model.n_bath: dense simulation is limited to 10 bath spins");
    }
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        std::ostringstream msg;
        msg << "DensityMatrix: expected a non-empty square matrix, got " << m_.rows() << "x"
            << m_.cols();
        throw DimensionMismatch(msg.str());
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector &psi) {
    return DensityMatrix(projector_onto(psi / psi.norm()));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

void DensityMatrix::validate(double tol) const {
    std::ostringstream msg;
    const double defect = hermiticity_defect(m_);
    if (defect > tol) {
        msg << "density matrix is not Hermitian (relative defect " << defect << ")";
        throw InvalidDensityMatrix(msg.str());
    }
    const Complex tr = m_.trace();
    if (std::abs(tr - 1.0) > tol) {
        msg << "density matrix trace is " << tr.real() << "+" << tr.imag() << "i, expected 1";
        throw InvalidDensityMatrix(msg.str());
    }
    const double min_eig = hermitian_eig(m_).eigenvalues.minCoeff();
    if (min_eig < -tol) {
        msg << "density matrix has negative eigenvalue " << min_eig;
        throw InvalidDensityMatrix(msg.str());
    }
}

ComplexVector qubit_ket(Axis axis, Sign sign) {
    const double s = sign == Sign::plus ? 1.0 : -1.0;
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector v(2);
    switch (axis) {
        case Axis::z:
            v << (sign == Sign::plus ? 1.0 : 0.0), (sign == Sign::plus ? 0.0 : 1.0);
            break;
        case Axis::x:
            v << r, s * r;
            break;
        case Axis::y:
            v << r, s * r * kI;
            break;
    }
    return v;
}

CentralProjector make_projector(Axis axis, Sign sign, std::size_t n_bath) {
    const ComplexMatrix local = projector_onto(qubit_ket(axis, sign));
    return CentralProjector{axis, sign, kron(local, identity(std::size_t{1} << n_bath))};
}

ComplexMatrix build_hamiltonian(const ModelParams &p) {
    p.validate();
    const std::size_t bath_dim = std::size_t{1} << p.n_bath;
    const ComplexMatrix sz = p.convention.central_scale * pauli(Axis::z);
    const double bs = p.convention.bath_scale;

    ComplexMatrix hyperfine = ComplexMatrix::Zero(bath_dim, bath_dim);
    ComplexMatrix zeeman = ComplexMatrix::Zero(bath_dim, bath_dim);
    for (std::size_t k = 0; k < p.n_bath; ++k) {
        const auto &g = p.couplings[k];
        const ComplexMatrix g_dot_i =
            bs * (g[0] * pauli(Axis::x) + g[1] * pauli(Axis::y) + g[2] * pauli(Axis::z));
        hyperfine += embed_bath_operator(g_dot_i, k, p.n_bath);
        zeeman += embed_bath_operator(bs * pauli(Axis::z), k, p.n_bath);
    }
    return kron(sz, hyperfine) + p.omega * kron(identity(2), zeeman);
}

ComplexMatrix build_propagator(const ModelParams &p, double duration) {
    if (duration < 0.0) {
        throw ConfigError("build_propagator: duration must be non-negative");
    }
    return expm_i_hermitian(build_hamiltonian(p), duration);
}

DensityMatrix evolve(const DensityMatrix &rho, const ComplexMatrix &u) {
    if (u.rows() != u.cols() || static_cast<std::size_t>(u.rows()) != rho.dim()) {
        std::ostringstream msg;
        msg << "evolve: propagator " << u.rows() << "x" << u.cols() << " does not act on a "
            << rho.dim() << "-dimensional state";
        throw DimensionMismatch(msg.str());
    }
    return DensityMatrix(u * rho.matrix() * u.adjoint());
}

double branch_probability(const DensityMatrix &rho, const CentralProjector &p) {
    if (static_cast<std::size_t>(p.matrix.rows()) != rho.dim()) {
        throw DimensionMismatch("measure: projector and state dimensions differ");
    }
    // tr(P ρ P†) = tr(P ρ) for an orthogonal projector.
    return (p.matrix * rho.matrix()).trace().real();
}

Measurement measure(const DensityMatrix &rho, const CentralProjector &p, double floor) {
    const double prob = branch_probability(rho, p);
    if (!(prob > floor)) {
        std::ostringstream msg;
        msg << "measure: branch probability " << prob << " is at or below the floor " << floor;
        throw NormalizationUnderflow(msg.str(), prob);
    }
    ComplexMatrix projected = p.matrix * rho.matrix() * p.matrix.adjoint();
    projected /= prob;
    return Measurement{DensityMatrix(std::move(projected)), std::min(prob, 1.0)};
}

DensityMatrix reduce_to_bath(const DensityMatrix &rho) {
    return DensityMatrix(partial_trace_first(rho.matrix(), 2));
}

double fidelity(const DensityMatrix &sigma, const DensityMatrix &rho) {
    if (sigma.dim() != rho.dim()) {
        throw DimensionMismatch("fidelity: states have different dimensions");
    }
    // tr sqrt(sqrt(rho) sigma sqrt(rho)) equals the sum of the singular values
    // of sqrt(sigma) sqrt(rho); this form is symmetric in its arguments.
    const ComplexMatrix product = matrix_sqrt_psd(sigma.matrix()) * matrix_sqrt_psd(rho.matrix());
    const Eigen::JacobiSVD<ComplexMatrix> svd(product);
    const double f = svd.singularValues().sum();
    return std::clamp(f, 0.0, 1.0);
}

double fidelity_pure(const ComplexVector &psi, const ComplexMatrix &rho) {
    if (psi.size() != rho.rows()) {
        throw DimensionMismatch("fidelity_pure: vector and state dimensions differ");
    }
    const double overlap = psi.dot(rho * psi).real();
    return std::clamp(std::sqrt(std::max(overlap, 0.0)), 0.0, 1.0);
}

double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (sigma.dim() != rho.dim()) {
        throw DimensionMismatch("trace_distance: states have different dimensions");
    }
    const ComplexMatrix diff = rho.matrix() - sigma.matrix();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(0.5 * (diff + diff.adjoint()),
                                                            Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw NoConvergence("trace_distance: eigensolver did not converge");
    }
    return std::clamp(0.5 * solver.eigenvalues().cwiseAbs().sum(), 0.0, 1.0);
}

double purity(const DensityMatrix &rho) {
    return (rho.matrix() * rho.matrix().adjoint()).trace().real();
}

ComplexVector bell_state(BellState which) {
    // Basis order |z+z+>, |z+z->, |z-z+>, |z-z->.
    const double r = 1.0 / std::sqrt(2.0);
    ComplexVector v = ComplexVector::Zero(4);
    switch (which) {
        case BellState::phi_plus:
            v(0) = r;
            v(3) = r;
            break;
        case BellState::phi_minus:
            v(0) = r;
            v(3) = -r;
            break;
        case BellState::psi_plus:
            v(1) = r;
            v(2) = r;
            break;
        case BellState::psi_minus:
            v(1) = r;
            v(2) = -r;
            break;
    }
    return v;
}

ComplexVector bell_product(BellState which, std::size_t n_pairs) {
    ComplexMatrix v = ComplexMatrix::Ones(1, 1);
    const ComplexMatrix pair = bell_state(which);
    for (std::size_t i = 0; i < n_pairs; ++i) {
        v = kron(v, pair);
    }
    return v.col(0);
}

std::string_view to_string(BellState which) {
    switch (which) {
        case BellState::phi_plus:
            return "phi+";
        case BellState::phi_minus:
            return "phi-";
        case BellState::psi_plus:
            return "psi+";
        case BellState::psi_minus:
            return "psi-";
    }
    return "?";
}

BellState parse_bell_state(std::string_view name) {
    for (BellState b : {BellState::phi_plus, BellState::phi_minus, BellState::psi_plus,
                        BellState::psi_minus}) {
        if (name == to_string(b)) {
            return b;
        }
    }
    throw ConfigError("unknown Bell state '" + std::string(name) +
                      "' (expected phi+, phi-, psi+ or psi-)");
}

}  // namespace qse
