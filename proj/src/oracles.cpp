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

#include "haarmagic/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <unsupported/Eigen/KroneckerProduct>

namespace haarmagic::oracle {

Eigen::VectorXcd to_vector(const StateVector &state) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(state.dim()));
    for (size_t k = 0; k < state.dim(); k++) {
        v(static_cast<Eigen::Index>(k)) = state[k];
    }
    return v;
}

Eigen::MatrixXcd pauli_matrix(int n_qubits, PauliString pauli) {
    const Complex i(0, 1);
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, -i, i, 0;
    z << 1, 0, 0, -1;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = n_qubits - 1; q >= 0; q--) {
        const bool bx = (pauli.x_mask >> q) & 1;
        const bool bz = (pauli.z_mask >> q) & 1;
        const Eigen::Matrix2cd &f = bx ? (bz ? y : x) : (bz ? z : id);
        Eigen::MatrixXcd next = Eigen::kroneckerProduct(out, f);
        out = next;
    }
    return out;
}

Eigen::MatrixXcd embed_two_qubit_gate(int n_qubits, const Eigen::MatrixXcd &gate, int q_low, int q_high) {
    const Eigen::Index d = Eigen::Index{1} << n_qubits;
    const Eigen::Index rest = ~((Eigen::Index{1} << q_low) | (Eigen::Index{1} << q_high));
    auto local = [&](Eigen::Index k) { return ((k >> q_low) & 1) + 2 * ((k >> q_high) & 1); };
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        for (Eigen::Index c = 0; c < d; c++) {
            if ((r & rest) == (c & rest)) {
                full(r, c) = gate(local(r), local(c));
            }
        }
    }
    return full;
}

std::vector<double> reduced_density_eigenvalues(const StateVector &state, int n_a) {
    const size_t da = size_t{1} << n_a;
    const size_t db = state.dim() / da;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(da));
    for (size_t a1 = 0; a1 < da; a1++) {
        for (size_t a2 = 0; a2 < da; a2++) {
            Complex acc = 0;
            for (size_t b = 0; b < db; b++) {
                acc += state[a1 + b * da] * std::conj(state[a2 + b * da]);
            }
            rho(static_cast<Eigen::Index>(a1), static_cast<Eigen::Index>(a2)) = acc;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
    std::vector<double> out(eig.eigenvalues().data(), eig.eigenvalues().data() + eig.eigenvalues().size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double magic_from_definition(const StateVector &state) {
    const int n = state.n_qubits();
    const uint32_t d = uint32_t{1} << n;
    const Eigen::VectorXcd psi = to_vector(state);
    double sum_xi_sq = 0;
    for (uint32_t x = 0; x < d; x++) {
        for (uint32_t z = 0; z < d; z++) {
            const Complex e = psi.dot(pauli_matrix(n, {x, z}) * psi);
            const double xi = std::norm(e) / d;
            sum_xi_sq += xi * xi;
        }
    }
    return -std::log2(sum_xi_sq) - n;
}

}  // namespace haarmagic::oracle
