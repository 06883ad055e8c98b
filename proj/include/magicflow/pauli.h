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

#ifndef MAGICFLOW_PAULI_H
#define MAGICFLOW_PAULI_H

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "magicflow/random.h"

namespace magicflow {

/// Largest qubit count a PauliString can hold (both masks and the combined
/// 2n-bit sampling index must fit in 64 bits).
inline constexpr int kMaxPauliQubits = 32;

/// An n-qubit Pauli operator  i^phase_power * (sigma_0 (x) sigma_1 (x) ...).
///
/// Bit q of x_mask / z_mask selects the factor on qubit q:
///   (0,0) -> I, (1,0) -> X, (0,1) -> Z, (1,1) -> Y.
/// Y is stored as itself (not as XZ), so the operator is Hermitian exactly when
/// phase_power is even, and phase_power in {0, 2} is the sign of a Hermitian
/// string.
struct PauliString {
    int n = 1;
    uint64_t x_mask = 0;
    uint64_t z_mask = 0;
    uint8_t phase_power = 0;

    PauliString() = default;
    PauliString(int n, uint64_t x_mask, uint64_t z_mask, int phase_power = 0);

    static PauliString identity(int n);

    /// Parses "+XYZ_", "-iZZ", "IXI" etc. Character k acts on qubit k; '_' and
    /// 'I' are identity.
    static PauliString from_str(std::string_view text);

    std::string str() const;

    bool is_identity() const { return x_mask == 0 && z_mask == 0 && phase_power == 0; }
    bool is_unsigned_identity() const { return x_mask == 0 && z_mask == 0; }
    bool is_hermitian() const { return (phase_power & 1) == 0; }
    int weight() const;

    /// i^phase_power as a complex number.
    std::complex<double> phase() const;

    PauliString operator-() const;
    /// Multiplies the global phase by i^k.
    PauliString times_i_pow(int k) const;

    bool operator==(const PauliString &other) const = default;
};

/// Group product a * b with exact phase tracking.
PauliString multiply(const PauliString &a, const PauliString &b);

/// True iff a*b == b*a.
bool commutes(const PauliString &a, const PauliString &b);

/// Result of applying a Pauli string to a computational basis state:
/// P|basis_index> = amplitude_factor |new_index>.
struct BasisAction {
    uint64_t new_index;
    std::complex<double> amplitude_factor;
};

BasisAction pauli_action(const PauliString &p, uint64_t basis_index);

/// Power of i picked up by P|b>, i.e. amplitude_factor == i^result. Used by the
/// statevector kernels to avoid complex multiplies per amplitude.
inline int pauli_action_phase_power(const PauliString &p, uint64_t basis_index) {
    int k = p.phase_power + __builtin_popcountll(p.x_mask & p.z_mask) +
            2 * __builtin_popcountll(p.z_mask & basis_index);
    return k & 3;
}

/// Uniform over the 4^n - 1 unsigned non-identity strings, then a uniformly
/// random sign.
PauliString sample_nonidentity_pauli(int n, Rng &rng);

/// The signed anticommuting triple (P^z, P^x, P^y) that a uniformly random
/// Clifford U produces from (sigma^z_1, sigma^x_1, sigma^y_1).
struct MeasurementFrame {
    PauliString pz;
    PauliString px;
    PauliString py;

    int n() const { return pz.n; }
    bool is_valid() const;
};

/// pz uniform over signed non-identity strings; px uniform over the signed
/// strings anticommuting with pz (rejection sampling, two draws expected);
/// py = i * px * pz. If `rejections` is non-null, the number of rejected px
/// candidates is added to it.
MeasurementFrame sample_frame(int n, Rng &rng, uint64_t *rejections = nullptr);

}  // namespace magicflow

#endif
