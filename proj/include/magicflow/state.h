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

#ifndef MAGICFLOW_STATE_H
#define MAGICFLOW_STATE_H

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "magicflow/pauli.h"
#include "magicflow/random.h"

namespace magicflow {

using Amplitude = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 14;
inline constexpr int kDefaultSpectrumMaxQubits = 12;
inline constexpr int kDefaultGueMaxQubits = 12;
inline constexpr double kZeroProbabilityTolerance = 1e-12;

/// Environment variable that overrides the qubit caps below.
inline constexpr const char *kMaxQubitsEnv = "MAGICFLOW_MAX_QUBITS";

/// Statevector cap: MAGICFLOW_MAX_QUBITS if set, else 14.
int max_qubits();
/// Pauli-spectrum cap (nullity, SRE): MAGICFLOW_MAX_QUBITS if set, else 12.
int spectrum_max_qubits();
/// Dense GUE eigendecomposition cap: MAGICFLOW_MAX_QUBITS if set, else 12.
int gue_max_qubits();

/// Dense pure state of n qubits. Qubit q is bit q of the amplitude index.
class StateVector {
   public:
    /// Takes ownership of `amplitudes` (length must be 2^n) and rescales them to
    /// unit norm. Throws CapExceeded past max_qubits().
    StateVector(int n, std::vector<Amplitude> amplitudes);

    int n() const { return n_; }
    uint64_t dim() const { return uint64_t{1} << n_; }
    std::span<const Amplitude> amplitudes() const { return amps_; }
    const Amplitude &operator[](uint64_t i) const { return amps_[i]; }
    double norm() const;

    /// Raw access for in-place kernels. Callers restore unit norm.
    std::vector<Amplitude> &mutable_amplitudes() { return amps_; }
    void normalize();

   private:
    int n_;
    std::vector<Amplitude> amps_;
};

/// Outcome of one measurement round.
struct MeasurementOutcome {
    int sign = 1;
    double probability = 1.0;
};

/// Post-measurement state together with the probability of the branch.
struct Projection {
    StateVector state;
    double probability;
};

StateVector zero_state(int n);
StateVector haar_state(int n, Rng &rng);
/// (|0> + e^{i pi/4}|1>)/sqrt(2) on every qubit.
StateVector t_product_state(int n);
/// exp(-i H t)|0...0> with H a GUE matrix whose spectrum is rescaled by
/// lambda -> 2 lambda / max|lambda|.
StateVector gue_state(int n, double evolution_time, Rng &rng);
/// a (x) b with a on the low qubits.
StateVector tensor_product(const StateVector &a, const StateVector &b);

/// <psi|P|psi>.
Amplitude expectation(const StateVector &state, const PauliString &p);
/// P|psi> (P must be Hermitian so the result stays normalized).
StateVector apply_pauli(const StateVector &state, const PauliString &p);

/// cos(theta_m pi/8)|psi> - i sin(theta_m pi/8) P|psi>.
StateVector apply_pauli_rotation(const StateVector &state, const PauliString &p, double theta_m);
void apply_pauli_rotation_inplace(StateVector &state, const PauliString &p, double theta_m);

/// Projects onto the sign-eigenspace of P. The returned probability is the
/// squared norm of (I + sign P)/2 |psi>. Throws ZeroProbabilityBranch below
/// kZeroProbabilityTolerance.
Projection project_pauli(const StateVector &state, const PauliString &p, int sign);
double project_pauli_inplace(StateVector &state, const PauliString &p, int sign);

/// Branch probabilities (p_plus, p_minus) of one protocol round, each obtained
/// as the squared norm of the unnormalized Kraus image
/// (I +- P^z)/2 * R_{P^x}(theta_m) |psi>.
std::pair<double, double> frame_outcome_probabilities(const StateVector &state,
                                                      const MeasurementFrame &frame,
                                                      double theta_m);

/// One protocol round: rotate about frame.px, then measure frame.pz with the
/// outcome drawn from its Born probability.
std::pair<StateVector, MeasurementOutcome> measure_frame(const StateVector &state,
                                                         const MeasurementFrame &frame,
                                                         double theta_m, Rng &rng);
MeasurementOutcome measure_frame_inplace(StateVector &state, const MeasurementFrame &frame,
                                         double theta_m, Rng &rng);

/// Von Neumann entropy (nats) of qubits [0, cut) against [cut, n).
double entanglement_entropy(const StateVector &state, int cut);

}  // namespace magicflow

#endif
