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

#include "magicflow/pauli.h"

#include <stdexcept>

namespace magicflow {

namespace {

uint64_t low_mask(int n) {
    return n >= 64 ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
}

void check_qubits(int n) {
    if (n < 1 || n > kMaxPauliQubits) {
        throw std::invalid_argument(
            "PauliString: qubit count " + std::to_string(n) + " outside [1, " +
            std::to_string(kMaxPauliQubits) + "]");
    }
}

void check_same_size(const PauliString &a, const PauliString &b) {
    if (a.n != b.n) {
        throw std::invalid_argument(
            "Pauli size mismatch: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
    }
}

}  // namespace

PauliString::PauliString(int n, uint64_t x_mask, uint64_t z_mask, int phase_power)
    : n(n), x_mask(x_mask), z_mask(z_mask), phase_power(static_cast<uint8_t>(phase_power & 3)) {
    check_qubits(n);
    if ((x_mask | z_mask) & ~low_mask(n)) {
        throw std::invalid_argument("PauliString: mask has bits above qubit count");
    }
}

PauliString PauliString::identity(int n) {
    return PauliString(n, 0, 0, 0);
}

PauliString PauliString::from_str(std::string_view text) {
    int phase = 0;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        if (text[0] == '-') {
            phase += 2;
        }
        text.remove_prefix(1);
    }
    if (!text.empty() && text[0] == 'i') {
        phase += 1;
        text.remove_prefix(1);
    }
    uint64_t x = 0;
    uint64_t z = 0;
    int n = static_cast<int>(text.size());
    check_qubits(n);
    for (int q = 0; q < n; q++) {
        uint64_t bit = uint64_t{1} << q;
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw std::invalid_argument("PauliString::from_str: bad character '" +
                                            std::string(1, text[q]) + "'");
        }
    }
    return PauliString(n, x, z, phase);
}

std::string PauliString::str() const {
    static constexpr const char *kPrefix[4] = {"+", "+i", "-", "-i"};
    std::string out = kPrefix[phase_power & 3];
    for (int q = 0; q < n; q++) {
        bool x = (x_mask >> q) & 1;
        bool z = (z_mask >> q) & 1;
        out.push_back("_XZY"[x + 2 * z]);
    }
    return out;
}

int PauliString::weight() const {
    return __builtin_popcountll(x_mask | z_mask);
}

std::complex<double> PauliString::phase() const {
    static const std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return kPowers[phase_power & 3];
}

PauliString PauliString::operator-() const {
    return times_i_pow(2);
}

PauliString PauliString::times_i_pow(int k) const {
    PauliString r = *this;
    r.phase_power = static_cast<uint8_t>((phase_power + k) & 3);
    return r;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    check_same_size(a, b);
    // With Y = i X Z on each qubit, a = i^(pa + |xa&za|) X^xa Z^za. Moving Z^za
    // past X^xb costs (-1)^|za&xb|; the result is re-expressed in the Y basis.
    uint64_t x = a.x_mask ^ b.x_mask;
    uint64_t z = a.z_mask ^ b.z_mask;
    int k = a.phase_power + b.phase_power + __builtin_popcountll(a.x_mask & a.z_mask) +
            __builtin_popcountll(b.x_mask & b.z_mask) - __builtin_popcountll(x & z) +
            2 * __builtin_popcountll(a.z_mask & b.x_mask);
    PauliString r;
    r.n = a.n;
    r.x_mask = x;
    r.z_mask = z;
    r.phase_power = static_cast<uint8_t>(((k % 4) + 4) % 4);
    return r;
}

bool commutes(const PauliString &a, const PauliString &b) {
    check_same_size(a, b);
    return (__builtin_popcountll((a.x_mask & b.z_mask) ^ (a.z_mask & b.x_mask)) & 1) == 0;
}

BasisAction pauli_action(const PauliString &p, uint64_t basis_index) {
    if (basis_index >> p.n) {
        throw std::out_of_range("pauli_action: basis index " + std::to_string(basis_index) +
                                " out of range for " + std::to_string(p.n) + " qubits");
    }
    static const std::complex<double> kPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return {basis_index ^ p.x_mask, kPowers[pauli_action_phase_power(p, basis_index)]};
}

PauliString sample_nonidentity_pauli(int n, Rng &rng) {
    check_qubits(n);
    uint64_t total = n == 32 ? 0 : (uint64_t{1} << (2 * n));
    // total == 0 encodes 2^64; every 64-bit draw except 0 is then valid.
    uint64_t r;
    if (total == 0) {
        do {
            r = rng();
        } while (r == 0);
    } else {
        r = 1 + uniform_below(rng, total - 1);
    }
    uint64_t mask = low_mask(n);
    int sign = (rng() >> 63) ? 2 : 0;
    return PauliString(n, r & mask, (r >> n) & mask, sign);
}

bool MeasurementFrame::is_valid() const {
    if (pz.n != px.n || pz.n != py.n) {
        return false;
    }
    if (!pz.is_hermitian() || !px.is_hermitian() || !py.is_hermitian()) {
        return false;
    }
    if (pz.is_unsigned_identity() || px.is_unsigned_identity()) {
        return false;
    }
    if (commutes(pz, px) || commutes(pz, py) || commutes(px, py)) {
        return false;
    }
    return multiply(px, pz).times_i_pow(1) == py;
}

MeasurementFrame sample_frame(int n, Rng &rng, uint64_t *rejections) {
    MeasurementFrame frame;
    frame.pz = sample_nonidentity_pauli(n, rng);
    uint64_t mask = low_mask(n);
    while (true) {
        uint64_t r = n == 32 ? rng() : uniform_below(rng, uint64_t{1} << (2 * n));
        PauliString candidate(n, r & mask, (r >> n) & mask, 0);
        if (!commutes(candidate, frame.pz)) {
            frame.px = (rng() >> 63) ? -candidate : candidate;
            break;
        }
        if (rejections != nullptr) {
            ++*rejections;
        }
    }
    frame.py = multiply(frame.px, frame.pz).times_i_pow(1);
    return frame;
}

}  // namespace magicflow
