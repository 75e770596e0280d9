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

#include "haarmagic/state.hpp"

#include <array>
#include <cmath>
#include <random>
#include <string>

#include "haarmagic/errors.hpp"

namespace haarmagic {

namespace {

void check_qubit_count(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw ConfigError("n_qubits must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                          std::to_string(n_qubits));
    }
}

void check_qubit(const StateVector &state, int q) {
    if (q < 0 || q >= state.n_qubits()) {
        throw ConfigError("qubit index " + std::to_string(q) + " out of range for " +
                          std::to_string(state.n_qubits()) + " qubits");
    }
}

Complex standard_complex_gaussian(std::normal_distribution<double> &normal, RngStream &rng) {
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

}  // namespace

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
    check_qubit_count(n_qubits);
    if (amps_.size() != (size_t{1} << n_qubits)) {
        throw ConfigError("amplitude array length " + std::to_string(amps_.size()) +
                          " does not match 2^" + std::to_string(n_qubits));
    }
    check_normalized();
}

StateVector StateVector::basis(int n_qubits, size_t index) {
    check_qubit_count(n_qubits);
    const size_t d = size_t{1} << n_qubits;
    if (index >= d) {
        throw ConfigError("basis index out of range");
    }
    std::vector<Complex> amps(d);
    amps[index] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

double StateVector::norm_squared() const noexcept {
    double total = 0;
    for (const Complex &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::check_normalized(double tol) const {
    const double n2 = norm_squared();
    if (!(std::abs(n2 - 1.0) <= tol)) {
        throw DataError("state is not normalized: |psi|^2 = " + std::to_string(n2));
    }
}

Unitary::Unitary(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
    const auto rows = m_.rows();
    if (rows < 1 || rows != m_.cols() || (rows & (rows - 1)) != 0) {
        throw ConfigError("unitary must be square with power-of-two dimension");
    }
    const Eigen::MatrixXcd defect = m_.adjoint() * m_ - Eigen::MatrixXcd::Identity(rows, rows);
    if (defect.cwiseAbs().maxCoeff() > 1e-10) {
        throw DataError("matrix is not unitary within 1e-10");
    }
}

void BrickwallSpec::validate() const {
    check_qubit_count(n_qubits);
    if (depth < 0) {
        throw ConfigError("brick-wall depth must be >= 0, got " + std::to_string(depth));
    }
}

StateVector sample_haar_state(int n_qubits, RngStream &rng) {
    check_qubit_count(n_qubits);
    const size_t d = size_t{1} << n_qubits;
    std::normal_distribution<double> normal;
    std::vector<Complex> amps(d);
    double n2 = 0;
    for (auto &a : amps) {
        a = standard_complex_gaussian(normal, rng);
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto &a : amps) {
        a *= inv;
    }
    return StateVector(n_qubits, std::move(amps));
}

Unitary sample_haar_unitary(int dim, RngStream &rng, QrPhase phase) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw ConfigError("unitary dimension must be a power of two >= 2, got " + std::to_string(dim));
    }
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd ginibre(dim, dim);
    for (int c = 0; c < dim; c++) {
        for (int r = 0; r < dim; r++) {
            ginibre(r, c) = standard_complex_gaussian(normal, rng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    if (phase == QrPhase::kCorrected) {
        const Eigen::MatrixXcd &r = qr.matrixQR();
        for (int j = 0; j < dim; j++) {
            const Complex rjj = r(j, j);
            q.col(j) *= rjj / std::abs(rjj);
        }
    }
    return Unitary(std::move(q));
}

void apply_two_qubit_gate(StateVector &state, const Unitary &gate, int q_low, int q_high) {
    check_qubit(state, q_low);
    check_qubit(state, q_high);
    if (q_low >= q_high) {
        throw ConfigError("two-qubit gate requires q_low < q_high");
    }
    if (gate.dim() != 4) {
        throw ConfigError("two-qubit gate must be 4x4");
    }
    std::array<Complex, 16> g;
    for (int r = 0; r < 4; r++) {
        for (int c = 0; c < 4; c++) {
            g[4 * r + c] = gate(r, c);
        }
    }
    const size_t lo = size_t{1} << q_low;
    const size_t hi = size_t{1} << q_high;
    auto amps = state.mutable_amplitudes();
    for (size_t base = 0; base < amps.size(); base++) {
        if (base & (lo | hi)) {
            continue;
        }
        const std::array<size_t, 4> idx{base, base | lo, base | hi, base | lo | hi};
        const std::array<Complex, 4> in{amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (int r = 0; r < 4; r++) {
            amps[idx[r]] = g[4 * r] * in[0] + g[4 * r + 1] * in[1] + g[4 * r + 2] * in[2] + g[4 * r + 3] * in[3];
        }
    }
    state.check_normalized();
}

StateVector sample_brickwall_state(const BrickwallSpec &spec, RngStream &rng) {
    spec.validate();
    StateVector state = StateVector::basis(spec.n_qubits, 0);
    for (int layer = 0; layer < spec.depth; layer++) {
        for (int q = layer % 2; q + 1 < spec.n_qubits; q += 2) {
            apply_two_qubit_gate(state, sample_haar_unitary(4, rng), q, q + 1);
        }
    }
    return state;
}

void apply_clifford_gate(StateVector &state, CliffordGate gate, std::span<const int> targets) {
    auto amps = state.mutable_amplitudes();
    switch (gate) {
        case CliffordGate::H: {
            if (targets.size() != 1) {
                throw ConfigError("H takes exactly one target");
            }
            check_qubit(state, targets[0]);
            const size_t m = size_t{1} << targets[0];
            const double s = 1.0 / std::sqrt(2.0);
            for (size_t k = 0; k < amps.size(); k++) {
                if (k & m) {
                    continue;
                }
                const Complex a0 = amps[k];
                const Complex a1 = amps[k | m];
                amps[k] = s * (a0 + a1);
                amps[k | m] = s * (a0 - a1);
            }
            break;
        }
        case CliffordGate::S: {
            if (targets.size() != 1) {
                throw ConfigError("S takes exactly one target");
            }
            check_qubit(state, targets[0]);
            const size_t m = size_t{1} << targets[0];
            for (size_t k = 0; k < amps.size(); k++) {
                if (k & m) {
                    amps[k] = Complex(-amps[k].imag(), amps[k].real());
                }
            }
            break;
        }
        case CliffordGate::CNOT: {
            if (targets.size() != 2) {
                throw ConfigError("CNOT takes {control, target}");
            }
            check_qubit(state, targets[0]);
            check_qubit(state, targets[1]);
            if (targets[0] == targets[1]) {
                throw ConfigError("CNOT control and target must differ");
            }
            const size_t mc = size_t{1} << targets[0];
            const size_t mt = size_t{1} << targets[1];
            for (size_t k = 0; k < amps.size(); k++) {
                if ((k & mc) && !(k & mt)) {
                    std::swap(amps[k], amps[k | mt]);
                }
            }
            break;
        }
    }
    state.check_normalized();
}

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    const int n = a.n_qubits() + b.n_qubits();
    if (n > kMaxQubits) {
        throw ConfigError("tensor product would have " + std::to_string(n) + " qubits, limit is " +
                          std::to_string(kMaxQubits));
    }
    std::vector<Complex> amps(a.dim() * b.dim());
    for (size_t ib = 0; ib < b.dim(); ib++) {
        for (size_t ia = 0; ia < a.dim(); ia++) {
            amps[ia + (ib << a.n_qubits())] = a[ia] * b[ib];
        }
    }
    StateVector out(n, std::move(amps));
    return out;
}

}  // namespace haarmagic
