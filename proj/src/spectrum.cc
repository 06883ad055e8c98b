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

#include "magicflow/spectrum.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "magicflow/errors.h"

namespace magicflow {

namespace {

void check_power_of_two(size_t size) {
    if (size == 0 || (size & (size - 1)) != 0) {
        throw std::invalid_argument("fwht: length " + std::to_string(size) + " is not a power of two");
    }
}

template <typename T>
void fwht_impl(std::span<T> data) {
    check_power_of_two(data.size());
    const size_t size = data.size();
    for (size_t half = 1; half < size; half <<= 1) {
        for (size_t block = 0; block < size; block += 2 * half) {
            T *lo = data.data() + block;
            T *hi = lo + half;
            for (size_t k = 0; k < half; k++) {
                T u = lo[k];
                T v = hi[k];
                lo[k] = u + v;
                hi[k] = u - v;
            }
        }
    }
}

void check_spectrum_cap(const char *what, int n) {
    int cap = spectrum_max_qubits();
    if (n > cap) {
        throw CapExceeded(what, n, cap);
    }
}

void check_alpha(double alpha) {
    if (!(alpha > 0) || alpha == 1.0 || !std::isfinite(alpha)) {
        throw std::invalid_argument("sre: Renyi index must be positive, finite and != 1 (got " +
                                    std::to_string(alpha) + ")");
    }
}

void check_tolerance(double tolerance) {
    if (!(tolerance > 0 && tolerance < 0.5)) {
        throw std::invalid_argument("nullity: tolerance must lie in (0, 0.5)");
    }
}

// Neumaier-compensated running sum.
struct CompensatedSum {
    double sum = 0;
    double carry = 0;

    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + carry; }
};

// |<P>|^(2 alpha) with the common alpha = 2 case kept exact.
inline double moment(double squared, double alpha) {
    if (alpha == 2.0) {
        return squared * squared;
    }
    return std::pow(squared, alpha);
}

int nullity_from_count(int n, uint64_t count) {
    if (count == 0 || (count & (count - 1)) != 0) {
        throw NullityResolutionError(count);
    }
    return n - (63 - __builtin_clzll(count));
}

}  // namespace

void fwht(std::span<Amplitude> data) {
    fwht_impl(data);
}

void fwht(std::span<double> data) {
    fwht_impl(data);
}

double PauliSpectrum::total() const {
    CompensatedSum s;
    for (double v : xi) {
        s.add(v);
    }
    return s.value();
}

void for_each_spectrum_row(const StateVector &state,
                           const std::function<void(uint64_t, std::span<const double>)> &visit) {
    check_spectrum_cap("pauli_spectrum", state.n());
    const uint64_t dim = state.dim();
    const double scale = 1.0 / static_cast<double>(dim);
    auto psi = state.amplitudes();
    std::vector<Amplitude> v(dim);
    std::vector<double> row(dim);
    for (uint64_t shift = 0; shift < dim; shift++) {
        for (uint64_t y = 0; y < dim; y++) {
            v[y] = std::conj(psi[y ^ shift]) * psi[y];
        }
        fwht(std::span<Amplitude>(v));
        // |<X^a Z^b>|^2 equals |<P>|^2 for the Y-convention string with the
        // same masks: the two differ by a unit phase.
        for (uint64_t b = 0; b < dim; b++) {
            row[b] = std::norm(v[b]) * scale;
        }
        visit(shift, row);
    }
}

PauliSpectrum pauli_spectrum(const StateVector &state) {
    check_spectrum_cap("pauli_spectrum", state.n());
    PauliSpectrum out;
    out.n = state.n();
    out.xi.resize(state.dim() * state.dim());
    for_each_spectrum_row(state, [&](uint64_t shift, std::span<const double> row) {
        std::copy(row.begin(), row.end(), out.xi.begin() + static_cast<std::ptrdiff_t>(shift << out.n));
    });
    return out;
}

PauliSpectrum brute_force_spectrum(const StateVector &state) {
    if (state.n() > kBruteForceMaxQubits) {
        throw CapExceeded("brute_force_spectrum", state.n(), kBruteForceMaxQubits);
    }
    const int n = state.n();
    const uint64_t dim = state.dim();
    PauliSpectrum out;
    out.n = n;
    out.xi.resize(dim * dim);
    for (uint64_t x = 0; x < dim; x++) {
        for (uint64_t z = 0; z < dim; z++) {
            PauliString p(n, x, z, 0);
            Amplitude e = 0;
            for (uint64_t b = 0; b < dim; b++) {
                BasisAction act = pauli_action(p, b);
                e += std::conj(state[act.new_index]) * act.amplitude_factor * state[b];
            }
            out.xi[PauliSpectrum::index_of(n, x, z)] = std::norm(e) / static_cast<double>(dim);
        }
    }
    return out;
}

double sre(const PauliSpectrum &spectrum, double alpha) {
    check_alpha(alpha);
    const double dim = std::ldexp(1.0, spectrum.n);
    CompensatedSum s;
    for (double v : spectrum.xi) {
        s.add(moment(v * dim, alpha));
    }
    return std::log(s.value() / dim) / (1.0 - alpha);
}

NullityResult nullity(const PauliSpectrum &spectrum, double tolerance) {
    check_tolerance(tolerance);
    const double dim = std::ldexp(1.0, spectrum.n);
    uint64_t count = 0;
    for (double v : spectrum.xi) {
        if (v * dim > 1.0 - tolerance) {
            count++;
        }
    }
    return {nullity_from_count(spectrum.n, count), count};
}

double MagicReport::sre_at(double alpha) const {
    for (const auto &entry : sre) {
        if (entry.alpha == alpha) {
            return entry.value;
        }
    }
    throw std::out_of_range("MagicReport: SRE index " + std::to_string(alpha) + " not computed");
}

MagicReport magic_report(const PauliSpectrum &spectrum, std::span<const double> alphas, double tolerance) {
    MagicReport report;
    NullityResult nr = nullity(spectrum, tolerance);
    report.nullity = nr.nullity;
    report.stabilizer_count = nr.stabilizer_count;
    for (double alpha : alphas) {
        report.sre.push_back({alpha, sre(spectrum, alpha)});
    }
    return report;
}

MagicReport magic_report(const StateVector &state, std::span<const double> alphas, double tolerance) {
    check_tolerance(tolerance);
    for (double alpha : alphas) {
        check_alpha(alpha);
    }
    const double dim = static_cast<double>(state.dim());
    uint64_t count = 0;
    std::vector<CompensatedSum> sums(alphas.size());
    for_each_spectrum_row(state, [&](uint64_t, std::span<const double> row) {
        std::vector<double> row_sums(alphas.size(), 0.0);
        for (double v : row) {
            double squared = v * dim;
            if (squared > 1.0 - tolerance) {
                count++;
            }
            for (size_t k = 0; k < alphas.size(); k++) {
                row_sums[k] += moment(squared, alphas[k]);
            }
        }
        for (size_t k = 0; k < alphas.size(); k++) {
            sums[k].add(row_sums[k]);
        }
    });
    MagicReport report;
    report.nullity = nullity_from_count(state.n(), count);
    report.stabilizer_count = count;
    for (size_t k = 0; k < alphas.size(); k++) {
        report.sre.push_back({alphas[k], std::log(sums[k].value() / dim) / (1.0 - alphas[k])});
    }
    return report;
}

double sre_additivity_check(const StateVector &a, const StateVector &b, double alpha) {
    double joint = sre(pauli_spectrum(tensor_product(a, b)), alpha);
    return std::abs(joint - sre(pauli_spectrum(a), alpha) - sre(pauli_spectrum(b), alpha));
}

}  // namespace magicflow
