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

#include "qse/environment.hpp"

#include <cmath>
#include <sstream>

#include "qse/errors.hpp"

namespace qse {
namespace {

constexpr std::array<std::string_view, kNumActions> kActionNames = {"Pz+", "Pz-", "Px+", "Px-",
                                                                    "Py+", "Py-", "I"};

}  // namespace

std::string_view action_name(Action a) {
    return kActionNames[action_index(a)];
}

bool parse_action(std::string_view token, Action &out) {
    for (std::size_t i = 0; i < kNumActions; ++i) {
        if (token == kActionNames[i]) {
            out = action_from_index(i);
            return true;
        }
    }
    if (token == "-" || token == "noop" || token == "id") {
        out = Action::idle;
        return true;
    }
    return false;
}

Action action_from_index(std::size_t index) {
    if (index >= kNumActions) {
        std::ostringstream msg;
        msg << "action index " << index << " out of range";
        throw ShapeMismatch(msg.str());
    }
    return static_cast<Action>(index);
}

bool is_superposition_projection(Action a) {
    return a == Action::project_x_plus || a == Action::project_x_minus ||
           a == Action::project_y_plus || a == Action::project_y_minus;
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::success:
            return "success";
        case Outcome::continuing:
            return "continue";
        case Outcome::timeout:
            return "timeout";
        case Outcome::fatal:
            return "fatal";
    }
    return "?";
}

QubitState QubitState::from_ket(Axis axis, Sign sign) {
    const ComplexVector v = qubit_ket(axis, sign);
    return QubitState{v(0), v(1)};
}

QubitState QubitState::from_bloch(double theta, double phi) {
    return QubitState{Complex(std::cos(theta / 2.0), 0.0),
                      std::polar(std::sin(theta / 2.0), phi)};
}

QubitState QubitState::from_name(std::string_view name) {
    if (name.size() == 2 && (name[1] == '+' || name[1] == '-')) {
        const Sign sign = name[1] == '+' ? Sign::plus : Sign::minus;
        switch (name[0]) {
            case 'x':
                return from_ket(Axis::x, sign);
            case 'y':
                return from_ket(Axis::y, sign);
            case 'z':
                return from_ket(Axis::z, sign);
            default:
                break;
        }
    }
    throw ConfigError("unknown single-spin state '" + std::string(name) +
                      "' (expected one of x+, x-, y+, y-, z+, z-)");
}

ComplexVector QubitState::vector() const {
    ComplexVector v(2);
    v << up, down;
    return v / v.norm();
}

void EnvConfig::validate() const {
    model.validate();
    if (model.n_bath == 0 || model.n_bath % 2 != 0) {
        throw ConfigError("model.n_bath: Bell-pair targets need an even, non-zero bath size");
    }
    if (!(theta > 0.0 && theta < 1.0)) {
        std::ostringstream msg;
        msg << "env.theta: fidelity threshold must lie in (0, 1), got " << theta;
        throw ConfigError(msg.str());
    }
    if (max_steps < 1) {
        throw ConfigError("env.max_steps: must be at least 1");
    }
    if (!(r_fatal <= r_minus * static_cast<double>(max_steps))) {
        std::ostringstream msg;
        msg << "env.r_fatal: must not exceed r_minus * max_steps = "
            << r_minus * static_cast<double>(max_steps) << ", got " << r_fatal;
        throw ConfigError(msg.str());
    }
    if (!(probability_floor > 0.0 && probability_floor < 1.0)) {
        throw ConfigError("env.probability_floor: must lie in (0, 1)");
    }
    const double norm = std::norm(custom_start.up) + std::norm(custom_start.down);
    if (start_mode == StartMode::fixed_custom && !(norm > 0.0)) {
        throw ConfigError("env.start_state: custom start state has zero norm");
    }
}

std::size_t encoding_length(std::size_t dim) {
    return 2 * (dim * (dim + 1) / 2 - 1);
}

std::vector<double> encode_state(const DensityMatrix &rho) {
    const std::size_t dim = rho.dim();
    const ComplexMatrix &m = rho.matrix();
    std::vector<double> out;
    out.reserve(encoding_length(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            if (i == dim - 1 && j == dim - 1) {
                break;
            }
            const Complex z = m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            out.push_back(z.real());
            out.push_back(z.imag());
        }
    }
    return out;
}

DensityMatrix decode_state(std::span<const double> encoding, std::size_t dim) {
    if (encoding.size() != encoding_length(dim)) {
        std::ostringstream msg;
        msg << "decode_state: expected " << encoding_length(dim) << " values for dimension " << dim
            << ", got " << encoding.size();
        throw DimensionMismatch(msg.str());
    }
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    std::size_t pos = 0;
    Complex diagonal_sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i; j < dim; ++j) {
            if (i == dim - 1 && j == dim - 1) {
                break;
            }
            const Complex z(encoding[pos], encoding[pos + 1]);
            pos += 2;
            const auto r = static_cast<Eigen::Index>(i);
            const auto c = static_cast<Eigen::Index>(j);
            m(r, c) = z;
            m(c, r) = std::conj(z);
            if (i == j) {
                diagonal_sum += z;
            }
        }
    }
    const auto last = static_cast<Eigen::Index>(dim - 1);
    m(last, last) = 1.0 - diagonal_sum.real();
    return DensityMatrix(std::move(m));
}

double episode_return(std::span<const double> rewards, double gamma) {
    double g = 0.0;
    double discount = 1.0;
    for (double r : rewards) {
        g += discount * r;
        discount *= gamma;
    }
    return g;
}

Environment::Environment(EnvConfig cfg)
    : cfg_(std::move(cfg)),
      propagator_((cfg_.validate(), build_propagator(cfg_.model, cfg_.model.tau))),
      projectors_{make_projector(Axis::z, Sign::plus, cfg_.model.n_bath),
                  make_projector(Axis::z, Sign::minus, cfg_.model.n_bath),
                  make_projector(Axis::x, Sign::plus, cfg_.model.n_bath),
                  make_projector(Axis::x, Sign::minus, cfg_.model.n_bath),
                  make_projector(Axis::y, Sign::plus, cfg_.model.n_bath),
                  make_projector(Axis::y, Sign::minus, cfg_.model.n_bath)},
      target_(bell_product(cfg_.target, cfg_.model.n_bath / 2)) {
}

const CentralProjector &Environment::projector(Action a) const {
    if (a == Action::idle) {
        throw ShapeMismatch("the idle action has no projector");
    }
    return projectors_[action_index(a)];
}

EnvState Environment::reset_to(const QubitState &central) const {
    const std::size_t bath_dim = std::size_t{1} << cfg_.model.n_bath;
    ComplexMatrix rho = kron(projector_onto(central.vector()),
                             identity(bath_dim) / static_cast<double>(bath_dim));
    return from_density_matrix(DensityMatrix(std::move(rho)));
}

QubitState Environment::draw_start(Rng &rng) const {
    switch (cfg_.start_mode) {
        case StartMode::fixed_xplus:
            return QubitState::from_ket(Axis::x, Sign::plus);
        case StartMode::random_pure:
            return haar_random_qubit(rng);
        case StartMode::fixed_custom:
            return cfg_.custom_start;
    }
    throw ConfigError("env.start_mode: unknown mode");
}

EnvState Environment::reset(Rng &rng) const {
    return reset_to(draw_start(rng));
}

EnvState Environment::from_density_matrix(DensityMatrix rho, std::size_t step_count) const {
    if (rho.dim() != dim()) {
        throw DimensionMismatch("environment state has the wrong dimension");
    }
    std::vector<double> enc = encode_state(rho);
    return EnvState{std::move(enc), std::move(rho), step_count, false};
}

double Environment::target_fidelity(const DensityMatrix &rho) const {
    return fidelity_pure(target_, partial_trace_first(rho.matrix(), 2));
}

StepResult Environment::step(const EnvState &state, Action action) const {
    if (state.done) {
        throw EpisodeFinished("step called on a finished episode");
    }
    StepResult result{.next = state};
    result.next.step_count = state.step_count + 1;

    DensityMatrix evolved = evolve(state.raw, propagator_);
    if (action != Action::idle) {
        const CentralProjector &p = projectors_[action_index(action)];
        result.success_prob = branch_probability(evolved, p);
        if (!(result.success_prob > cfg_.probability_floor)) {
            result.reward = cfg_.r_fatal;
            result.done = true;
            result.outcome = Outcome::fatal;
            result.fidelity = 0.0;
            result.next.raw = std::move(evolved);
            result.next.encoding = encode_state(result.next.raw);
            result.next.done = true;
            return result;
        }
        evolved = measure(evolved, p, cfg_.probability_floor).state;
    }
    if (cfg_.validate_states) {
        evolved.validate();
    }

    result.fidelity = target_fidelity(evolved);
    if (result.fidelity > cfg_.theta) {
        result.reward = cfg_.r_plus;
        result.done = true;
        result.outcome = Outcome::success;
    } else if (result.next.step_count < cfg_.max_steps) {
        result.reward = cfg_.r_minus;
        result.outcome = Outcome::continuing;
    } else {
        result.reward = cfg_.r_minus;
        result.done = true;
        result.outcome = Outcome::timeout;
    }
    result.next.encoding = encode_state(evolved);
    result.next.raw = std::move(evolved);
    result.next.done = result.done;
    return result;
}

QubitState haar_random_qubit(Rng &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    double a = gauss(rng);
    double b = gauss(rng);
    double c = gauss(rng);
    double d = gauss(rng);
    const double norm = std::sqrt(a * a + b * b + c * c + d * d);
    return QubitState{Complex(a / norm, b / norm), Complex(c / norm, d / norm)};
}

}  // namespace qse
