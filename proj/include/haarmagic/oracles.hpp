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

// Dense brute-force references. Slow and small-N only; they share no code
// path with the production routines they are used to check.

#include <vector>

#include <Eigen/Dense>

#include "haarmagic/pauli_magic.hpp"
#include "haarmagic/state.hpp"

namespace haarmagic::oracle {

/// Column vector of the state's amplitudes.
Eigen::VectorXcd to_vector(const StateVector &state);

/// 2^N x 2^N matrix of the Hermitian string built by explicit Kronecker
/// products of I, X, Y, Z (qubit 0 is the rightmost factor).
Eigen::MatrixXcd pauli_matrix(int n_qubits, PauliString pauli);

/// Full 2^N x 2^N matrix of a 4x4 gate acting on (q_low, q_high).
Eigen::MatrixXcd embed_two_qubit_gate(int n_qubits, const Eigen::MatrixXcd &gate, int q_low, int q_high);

/// Eigenvalues (descending) of tr_B |psi><psi| with A = qubits [0, n_a),
/// from the explicitly formed reduced density matrix.
std::vector<double> reduced_density_eigenvalues(const StateVector &state, int n_a);

/// M2 via the definition: string probabilities from dense Pauli matrices.
double magic_from_definition(const StateVector &state);

}  // namespace haarmagic::oracle
