// Copyright 2026 The magicflow Authors
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

#include "magicflow/state.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "magicflow/errors.h"

namespace magicflow {

namespace {

int cap_from_env(int fallback) {
    const char *text = std::getenv(kMaxQubitsEnv);
    if (text == nullptr || *text == '\0') {
        return fallback;
    }
    char *end = nullptr;
    long value = std::strtol(text, &end, 10);
    if (end == text || *end != '\0' || value < 1 || value > 30) {
        throw std::invalid_argument(std::string(kMaxQubitsEnv) + " must be an integer in [1, 30]");
    }
    return static_cast<int>(value);
}

void check_cap(const char *what, int n, int cap) {
    if (n < 1) {
        throw std::invalid_argument(std::string(what) + ": qubit count must be >= 1");
    }
    if (n > cap) {
        throw CapExceeded(what, n, cap);
    }
}

void check_match(const StateVector &state, const PauliString &p) {
    if (p.n != state.n()) {
        throw std::invalid_argument("Pauli acts on " + std::to_string(p.n) +
                                    " qubits but the state has " + std::to_string(state.n()));
    }
}

void check_hermitian(const PauliString &p, const char *what) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument(std::string(what) + ": Pauli " + p.str() + " is not Hermitian");
    }
}

// z * i^k.
inline Amplitude mul_i_pow(Amplitude z, int k) {
    switch (k & 3) {
        case 0:
            return z;
        case 1:
            return {-z.imag(), z.real()};
        case 2:
            return -z;
        default:
            return {z.imag(), -z.real()};
    }
}

// Visits every unordered pair {b, b ^ x} once (x != 0).
template <typename F>
void for_each_pair(uint64_t dim, uint64_t x, F &&f) {
    uint64_t high = uint64_t{1} << (63 - __builtin_clzll(x));
    for (uint64_t b = 0; b < dim; b++) {
        if ((b & high) == 0) {
            f(b, b ^ x);
        }
    }
}

}  // namespace

int max_qubits() {
    return cap_from_env(kDefaultMaxQubits);
}

int spectrum_max_qubits() {
    return cap_from_env(kDefaultSpectrumMaxQubits);
}

int gue_max_qubits() {
    return cap_from_env(kDefaultGueMaxQubits);
}

StateVector::StateVector(int n, std::vector<Amplitude> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    check_cap("StateVector", n, max_qubits());
    if (amps_.size() != (uint64_t{1} << n)) {
        throw std::invalid_argument("StateVector: expected " + std::to_string(uint64_t{1} << n) +
                                    " amplitudes, got " + std::to_string(amps_.size()));
    }
    normalize();
}

double StateVector::norm() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

void StateVector::normalize() {
    double nrm = norm();
    if (!(nrm > 0) || !std::isfinite(nrm)) {
        throw std::invalid_argument("StateVector: cannot normalize a zero or non-finite vector");
    }
    double inv = 1.0 / nrm;
    for (auto &a : amps_) {
        a *= inv;
    }
}

StateVector zero_state(int n) {
    check_cap("zero_state", n, max_qubits());
    std::vector<Amplitude> amps(uint64_t{1} << n);
    amps[0] = 1.0;
    return StateVector(n, std::move(amps));
}

StateVector haar_state(int n, Rng &rng) {
    check_cap("haar_state", n, max_qubits());
    std::vector<Amplitude> amps(uint64_t{1} << n);
    for (auto &a : amps) {
        double re = standard_normal(rng);
        double im = standard_normal(rng);
        a = {re, im};
    }
    return StateVector(n, std::move(amps));
}

StateVector t_product_state(int n) {
    check_cap("t_product_state", n, max_qubits());
    uint64_t dim = uint64_t{1} << n;
    std::vector<Amplitude> amps(dim);
    double scale = std::pow(2.0, -0.5 * n);
    for (uint64_t b = 0; b < dim; b++) {
        double angle = std::numbers::pi / 4 * __builtin_popcountll(b);
        amps[b] = std::polar(scale, angle);
    }
    return StateVector(n, std::move(amps));
}

StateVector gue_state(int n, double evolution_time, Rng &rng) {
    check_cap("gue_state", n, std::min(gue_max_qubits(), max_qubits()));
    if (!(evolution_time >= 0)) {
        throw std::invalid_argument("gue_state: evolution time must be >= 0");
    }
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd h(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        h(r, r) = standard_normal(rng);
        for (Eigen::Index c = r + 1; c < dim; c++) {
            double re = standard_normal(rng);
            double im = standard_normal(rng);
            h(r, c) = Amplitude(re, im) * (1.0 / std::numbers::sqrt2);
            h(c, r) = std::conj(h(r, c));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gue_state: eigendecomposition failed");
    }
    const Eigen::VectorXd &lambda = solver.eigenvalues();
    const Eigen::MatrixXcd &v = solver.eigenvectors();
    double scale = lambda.cwiseAbs().maxCoeff();
    scale = scale > 0 ? 2.0 / scale : 0.0;

    // exp(-iHt)|0> = sum_k v_k e^{-i lambda_k t} conj(v_k[0]).
    Eigen::VectorXcd coeffs(dim);
    for (Eigen::Index k = 0; k < dim; k++) {
        coeffs(k) = std::polar(1.0, -lambda(k) * scale * evolution_time) * std::conj(v(0, k));
    }
    Eigen::VectorXcd psi = v * coeffs;
    return StateVector(n, std::vector<Amplitude>(psi.data(), psi.data() + dim));
}

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    int n = a.n() + b.n();
    check_cap("tensor_product", n, max_qubits());
    std::vector<Amplitude> amps(uint64_t{1} << n);
    for (uint64_t j = 0; j < b.dim(); j++) {
        for (uint64_t i = 0; i < a.dim(); i++) {
            amps[i | (j << a.n())] = a[i] * b[j];
        }
    }
    return StateVector(n, std::move(amps));
}

Amplitude expectation(const StateVector &state, const PauliString &p) {
    check_match(state, p);
    Amplitude total = 0;
    auto amps = state.amplitudes();
    for (uint64_t b = 0; b < state.dim(); b++) {
        // <b ^ x| P |b> = i^k(b)
        total += std::conj(amps[b ^ p.x_mask]) * mul_i_pow(amps[b], pauli_action_phase_power(p, b));
    }
    return total;
}

StateVector apply_pauli(const StateVector &state, const PauliString &p) {
    check_match(state, p);
    check_hermitian(p, "apply_pauli");
    std::vector<Amplitude> out(state.dim());
    for (uint64_t b = 0; b < state.dim(); b++) {
        out[b ^ p.x_mask] = mul_i_pow(state[b], pauli_action_phase_power(p, b));
    }
    return StateVector(state.n(), std::move(out));
}

void apply_pauli_rotation_inplace(StateVector &state, const PauliString &p, double theta_m) {
    check_match(state, p);
    check_hermitian(p, "apply_pauli_rotation");
    const double angle = theta_m * std::numbers::pi / 8;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    auto &amps = state.mutable_amplitudes();
    const uint64_t dim = state.dim();
    if (p.x_mask == 0) {
        for (uint64_t b = 0; b < dim; b++) {
            // Diagonal P: eigenvalue i^k with k even.
            double eig = pauli_action_phase_power(p, b) == 0 ? 1.0 : -1.0;
            amps[b] *= Amplitude(c, -s * eig);
        }
    } else {
        for_each_pair(dim, p.x_mask, [&](uint64_t b0, uint64_t b1) {
            Amplitude a0 = amps[b0];
            Amplitude a1 = amps[b1];
            // (P psi)[b0] = i^k(b1) a1, (P psi)[b1] = i^k(b0) a0.
            amps[b0] = c * a0 + mul_i_pow(s * a1, pauli_action_phase_power(p, b1) + 3);
            amps[b1] = c * a1 + mul_i_pow(s * a0, pauli_action_phase_power(p, b0) + 3);
        });
    }
    state.normalize();
}

StateVector apply_pauli_rotation(const StateVector &state, const PauliString &p, double theta_m) {
    StateVector out = state;
    apply_pauli_rotation_inplace(out, p, theta_m);
    return out;
}

namespace {

// (I + sign P)/2 applied in place without renormalization; returns the squared
// norm of the result.
double apply_projector(std::vector<Amplitude> &amps, const PauliString &p, int sign) {
    const uint64_t dim = amps.size();
    const int sign_power = sign > 0 ? 0 : 2;
    double total = 0;
    if (p.x_mask == 0) {
        for (uint64_t b = 0; b < dim; b++) {
            int k = (pauli_action_phase_power(p, b) + sign_power) & 3;
            if (k != 0) {
                amps[b] = 0;
            }
            total += std::norm(amps[b]);
        }
    } else {
        for_each_pair(dim, p.x_mask, [&](uint64_t b0, uint64_t b1) {
            Amplitude a0 = amps[b0];
            Amplitude a1 = amps[b1];
            amps[b0] = 0.5 * (a0 + mul_i_pow(a1, pauli_action_phase_power(p, b1) + sign_power));
            amps[b1] = 0.5 * (a1 + mul_i_pow(a0, pauli_action_phase_power(p, b0) + sign_power));
            total += std::norm(amps[b0]) + std::norm(amps[b1]);
        });
    }
    return total;
}

void check_projection_args(const StateVector &state, const PauliString &p, int sign) {
    check_match(state, p);
    check_hermitian(p, "project_pauli");
    if (p.is_unsigned_identity()) {
        throw std::invalid_argument("project_pauli: cannot measure the identity");
    }
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("project_pauli: sign must be +1 or -1");
    }
}

}  // namespace

double project_pauli_inplace(StateVector &state, const PauliString &p, int sign) {
    check_projection_args(state, p, sign);
    double predicted = 0.5 * (1.0 + sign * expectation(state, p).real());
    if (predicted < kZeroProbabilityTolerance) {
        throw ZeroProbabilityBranch(predicted);
    }
    double probability = apply_projector(state.mutable_amplitudes(), p, sign);
    state.normalize();
    return probability;
}

Projection project_pauli(const StateVector &state, const PauliString &p, int sign) {
    StateVector out = state;
    double probability = project_pauli_inplace(out, p, sign);
    return {std::move(out), probability};
}

std::pair<double, double> frame_outcome_probabilities(const StateVector &state,
                                                      const MeasurementFrame &frame,
                                                      double theta_m) {
    check_projection_args(state, frame.pz, 1);
    StateVector rotated = apply_pauli_rotation(state, frame.px, theta_m);
    std::vector<Amplitude> plus(rotated.amplitudes().begin(), rotated.amplitudes().end());
    std::vector<Amplitude> minus = plus;
    return {apply_projector(plus, frame.pz, 1), apply_projector(minus, frame.pz, -1)};
}

MeasurementOutcome measure_frame_inplace(StateVector &state, const MeasurementFrame &frame,
                                         double theta_m, Rng &rng) {
    if (frame.n() != state.n()) {
        throw std::invalid_argument("measure_frame: frame size does not match state");
    }
    apply_pauli_rotation_inplace(state, frame.px, theta_m);
    double p_plus = std::clamp(0.5 * (1.0 + expectation(state, frame.pz).real()), 0.0, 1.0);
    double u = uniform01(rng);
    int sign = u < p_plus ? 1 : -1;
    // Sampling never lands on a numerically empty branch.
    if (p_plus < kZeroProbabilityTolerance) {
        sign = -1;
    } else if (1.0 - p_plus < kZeroProbabilityTolerance) {
        sign = 1;
    }
    project_pauli_inplace(state, frame.pz, sign);
    return {sign, sign > 0 ? p_plus : 1.0 - p_plus};
}

std::pair<StateVector, MeasurementOutcome> measure_frame(const StateVector &state,
                                                         const MeasurementFrame &frame,
                                                         double theta_m, Rng &rng) {
    StateVector out = state;
    MeasurementOutcome outcome = measure_frame_inplace(out, frame, theta_m, rng);
    return {std::move(out), outcome};
}

double entanglement_entropy(const StateVector &state, int cut) {
    if (cut < 1 || cut >= state.n()) {
        throw std::invalid_argument("entanglement_entropy: cut " + std::to_string(cut) +
                                    " outside [1, " + std::to_string(state.n() - 1) + "]");
    }
    const Eigen::Index rows = Eigen::Index{1} << cut;
    const Eigen::Index cols = Eigen::Index{1} << (state.n() - cut);
    Eigen::Map<const Eigen::MatrixXcd> m(state.amplitudes().data(), rows, cols);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    double entropy = 0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); k++) {
        double lambda = svd.singularValues()(k) * svd.singularValues()(k);
        if (lambda > 0) {
            entropy -= lambda * std::log(lambda);
        }
    }
    return entropy;
}

}  // namespace magicflow
