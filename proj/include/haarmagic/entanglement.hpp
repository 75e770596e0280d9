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

#include <span>
#include <vector>

#include "haarmagic/state.hpp"

namespace haarmagic {

/// Subsystem A is qubits [0, n_a), the low bits of the amplitude index.
struct CutSpec {
    int n_a = 1;

    /// Balanced cut floor(N/2).
    static CutSpec half(int n_qubits) { return CutSpec{n_qubits / 2}; }
};

struct EntropyResult {
    double s = 0;                   // von Neumann entropy, bits
    std::vector<double> schmidt_sq;  // squared Schmidt coefficients, descending
};

/// Squared singular values of the 2^{n_a} x 2^{n_b} amplitude matrix, descending.
std::vector<double> schmidt_spectrum(const StateVector &state, CutSpec cut);

/// -sum lambda log2 lambda. Entries below 1e-12 count as zero.
double von_neumann_entropy(std::span<const double> schmidt_sq);

EntropyResult entanglement_entropy(const StateVector &state, CutSpec cut);

/// Exact Haar average of the subsystem entropy in bits (Page's formula)
/// for subsystems of n_a and n_b qubits.
double page_entropy(int n_a, int n_b);

}  // namespace haarmagic
