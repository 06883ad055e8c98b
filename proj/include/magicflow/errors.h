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

#ifndef MAGICFLOW_ERRORS_H
#define MAGICFLOW_ERRORS_H

#include <stdexcept>
#include <string>

namespace magicflow {

/// A qubit count exceeds the cap of the requested operation.
class CapExceeded : public std::length_error {
   public:
    CapExceeded(const std::string &what, int requested, int cap)
        : std::length_error(what + ": " + std::to_string(requested) + " qubits exceeds cap of " +
                            std::to_string(cap)),
          requested(requested),
          cap(cap) {}

    int requested;
    int cap;
};

/// A projection was requested onto an outcome of (numerically) zero probability.
class ZeroProbabilityBranch : public std::domain_error {
   public:
    explicit ZeroProbabilityBranch(double probability)
        : std::domain_error("zero-probability branch (p = " + std::to_string(probability) + ")"),
          probability(probability) {}

    double probability;
};

/// The count of near-unit Pauli expectations is not a power of two, so no
/// stabilizer group fits the spectrum at the requested tolerance.
class NullityResolutionError : public std::runtime_error {
   public:
    explicit NullityResolutionError(uint64_t count)
        : std::runtime_error("stabilizer count " + std::to_string(count) +
                             " is not a power of two; tolerance misconfigured or state at "
                             "the edge of numerical resolution"),
          count(count) {}

    uint64_t count;
};

}  // namespace magicflow

#endif
