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

#ifndef MAGICFLOW_SPECTRUM_H
#define MAGICFLOW_SPECTRUM_H

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "magicflow/pauli.h"
#include "magicflow/state.h"

namespace magicflow {

inline constexpr double kDefaultNullityTolerance = 1e-13;
inline constexpr int kBruteForceMaxQubits = 6;

/// In-place unnormalized Walsh-Hadamard transform; data.size() must be a power
/// of two.
void fwht(std::span<Amplitude> data);
void fwht(std::span<double> data);

/// xi[P] = 2^-n |<psi|P|psi>|^2 over all 4^n unsigned Pauli strings.
/// Entry (x_mask, z_mask) lives at index (x_mask << n) | z_mask.
struct PauliSpectrum {
    int n = 0;
    std::vector<double> xi;

    static uint64_t index_of(int n, uint64_t x_mask, uint64_t z_mask) { return (x_mask << n) | z_mask; }
    double at(const PauliString &p) const { return xi[index_of(n, p.x_mask, p.z_mask)]; }
    double total() const;
};

/// Fast transform: for each shift a, v_a[y] = conj(psi[y^a]) psi[y] is
/// Walsh-Hadamard transformed to give <X^a Z^b> for every b. O(n 4^n).
PauliSpectrum pauli_spectrum(const StateVector &state);

/// Oracle: every expectation evaluated separately through pauli_action. O(8^n).
PauliSpectrum brute_force_spectrum(const StateVector &state);

/// Streams the spectrum row by row without materializing all 4^n entries.
/// `row[b]` is xi for the string with x_mask = shift, z_mask = b.
void for_each_spectrum_row(const StateVector &state,
                           const std::function<void(uint64_t shift, std::span<const double> row)> &visit);

/// Stabilizer Renyi entropy (nats). alpha > 0, alpha != 1.
double sre(const PauliSpectrum &spectrum, double alpha);

struct NullityResult {
    int nullity;
    uint64_t stabilizer_count;
};

/// Counts entries with 2^n xi > 1 - tolerance. Throws NullityResolutionError
/// when the count is not a power of two.
NullityResult nullity(const PauliSpectrum &spectrum, double tolerance = kDefaultNullityTolerance);

struct SreValue {
    double alpha;
    double value;
};

/// Nullity and SREs gathered from one spectrum.
struct MagicReport {
    int nullity = 0;
    uint64_t stabilizer_count = 1;
    std::vector<SreValue> sre;

    /// Value at `alpha`; throws if it was not requested.
    double sre_at(double alpha) const;
};

MagicReport magic_report(const PauliSpectrum &spectrum, std::span<const double> alphas,
                         double tolerance = kDefaultNullityTolerance);

/// Same result as magic_report(pauli_spectrum(state), ...) in O(2^n) memory.
MagicReport magic_report(const StateVector &state, std::span<const double> alphas,
                         double tolerance = kDefaultNullityTolerance);

/// |M_alpha(a (x) b) - M_alpha(a) - M_alpha(b)|.
double sre_additivity_check(const StateVector &a, const StateVector &b, double alpha);

}  // namespace magicflow

#endif
