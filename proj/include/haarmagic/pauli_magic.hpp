// Copyright 2026 The haarmagic Authors
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

#include <cstdint>
#include <span>

#include "haarmagic/state.hpp"

namespace haarmagic {

/// Unsigned Pauli string: X on bits of x_mask, Z on bits of z_mask, Y where
/// both are set. The Hermitian operator is i^{|x & z|} X^x Z^z.
struct PauliString {
    uint32_t x_mask = 0;
    uint32_t z_mask = 0;

    bool is_identity() const noexcept { return x_mask == 0 && z_mask == 0; }
    bool operator==(const PauliString &) const = default;
};

struct MagicResult {
    double m2 = 0;          // stabilizer 2-Renyi entropy, bits
    double xi_norm = 0;     // sum of the string probabilities; 1 for pure states
    double sum_fourth = 0;  // sum over strings of <sigma>^4
};

inline constexpr int kMaxNaiveQubits = 7;

/// log2((2^N + 1) / 2), the largest value M2 can take on N qubits.
double max_magic(int n_qubits);

/// <psi|sigma|psi>, real for the Hermitian string.
double pauli_expectation(const StateVector &state, PauliString pauli);

/// Direct sum over all 4^N strings. O(8^N); limited to N <= 7.
MagicResult sre_naive(const StateVector &state);

/// O(N 4^N) evaluation via Walsh-Hadamard transforms, one X-sector at a time.
MagicResult sre_fast(const StateVector &state);

/// Unnormalized in-place transform v'_z = sum_k (-1)^{popcount(z & k)} v_k.
void walsh_hadamard_inplace(std::span<Complex> v);

}  // namespace haarmagic
