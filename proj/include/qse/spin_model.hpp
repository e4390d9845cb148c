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

// Central spin coupled to a bath of non-interacting spin-1/2 nuclei.
//
// Tensor order is (central, bath_1, ..., bath_N). The central spin is a
// two-level subspace measured along x, y or z; the bath spins are only ever
// reached through the hyperfine coupling.

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qse/linalg.hpp"

namespace qse {

/// Tolerance used by DensityMatrix::validate.
inline constexpr double kStateTolerance = 1e-9;
/// Branch probabilities at or below this are treated as a failed normalization.
inline constexpr double kDefaultProbabilityFloor = 1e-8;

/// Operator normalization. S^z = central_scale * sigma_z and
/// I^(a) = bath_scale * sigma_a. The defaults (1, 1) are the only pair that
/// reproduces the reference sequence tables; see docs/conventions.md.
struct SpinConvention {
    double central_scale = 1.0;
    double bath_scale = 1.0;
};

struct ModelParams {
    std::size_t n_bath = 2;
    /// One coupling vector g_k per bath spin (relative frequency units).
    std::vector<std::array<double, 3>> couplings{{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
    /// Nuclear Zeeman frequency (relative frequency units).
    double omega = 0.5;
    /// Free-evolution interval per step (relative time units).
    double tau = 1.0;
    SpinConvention convention;

    /// Linear chain along x: g_k = (1,0,0) for every k, omega = 1/2, tau = 1.
    static ModelParams linear_chain(std::size_t n_bath, double tau = 1.0);

    /// Full Hilbert-space dimension 2^(n_bath+1).
    std::size_t dim() const;
    /// Throws ConfigError naming the offending field.
    void validate() const;
};

class DensityMatrix {
   public:
    /// Takes ownership without checking the state invariants; throws
    /// DimensionMismatch for non-square input.
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix pure(const ComplexVector &psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const {
        return static_cast<std::size_t>(m_.rows());
    }
    const ComplexMatrix &matrix() const {
        return m_;
    }

    /// Hermitian (relative Frobenius), unit trace and eigenvalues >= -tol.
    /// Throws InvalidDensityMatrix describing the first violation.
    void validate(double tol = kStateTolerance) const;

   private:
    ComplexMatrix m_;
};

enum class Axis { x, y, z };
enum class Sign { plus, minus };

/// Single-qubit eigenket of sigma_axis: |z+>=(1,0), |x±>=(1,±1)/√2, |y±>=(1,±i)/√2.
ComplexVector qubit_ket(Axis axis, Sign sign);

/// |axis sign><axis sign| ⊗ 1 over the full space.
struct CentralProjector {
    Axis axis;
    Sign sign;
    ComplexMatrix matrix;
};

CentralProjector make_projector(Axis axis, Sign sign, std::size_t n_bath);

/// H = S^z ⊗ Σ_k g_k·I_k + ω Σ_k 1 ⊗ I_k^z.
ComplexMatrix build_hamiltonian(const ModelParams &p);

/// U(duration) = exp(-i H duration).
ComplexMatrix build_propagator(const ModelParams &p, double duration);

/// U ρ U†.
DensityMatrix evolve(const DensityMatrix &rho, const ComplexMatrix &u);

/// tr(P ρ P†) without normalizing.
double branch_probability(const DensityMatrix &rho, const CentralProjector &p);

struct Measurement {
    DensityMatrix state;
    double probability;
};

/// Post-selects the branch of `p`. Throws NormalizationUnderflow when the
/// branch probability is <= floor.
Measurement measure(const DensityMatrix &rho, const CentralProjector &p,
                    double floor = kDefaultProbabilityFloor);

/// Bath state obtained by tracing out the central spin.
DensityMatrix reduce_to_bath(const DensityMatrix &rho);

/// F(σ,ρ) = tr √(√ρ σ √ρ), clamped to [0,1].
double fidelity(const DensityMatrix &sigma, const DensityMatrix &rho);

/// √<ψ|ρ|ψ>, equal to fidelity(|ψ><ψ|, ρ) for normalized ψ.
double fidelity_pure(const ComplexVector &psi, const ComplexMatrix &rho);

/// ½ tr|ρ-σ|.
double trace_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

/// tr(ρ ρ†).
double purity(const DensityMatrix &rho);

enum class BellState { phi_plus, phi_minus, psi_plus, psi_minus };

ComplexVector bell_state(BellState which);

/// |which>^{⊗ n_pairs}, pairing bath spins (1,2), (3,4), ...
ComplexVector bell_product(BellState which, std::size_t n_pairs);

/// "phi+", "phi-", "psi+", "psi-".
std::string_view to_string(BellState which);
/// Accepts the names above; throws ConfigError otherwise.
BellState parse_bell_state(std::string_view name);

}  // namespace qse
