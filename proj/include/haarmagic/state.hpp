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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "haarmagic/rng.hpp"

namespace haarmagic {

using Complex = std::complex<double>;

inline constexpr int kMaxQubits = 14;
inline constexpr double kNormTolerance = 1e-10;

/// Dense pure state of N qubits. Qubit k is bit k of the amplitude index
/// (little-endian), shared by every module.
class StateVector {
  public:
    /// Takes ownership of `amplitudes`; length must be 2^n and norm 1.
    StateVector(int n_qubits, std::vector<Complex> amplitudes);

    /// Computational basis state |index>.
    static StateVector basis(int n_qubits, size_t index = 0);

    int n_qubits() const noexcept { return n_qubits_; }
    size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    std::span<Complex> mutable_amplitudes() noexcept { return amps_; }
    const Complex &operator[](size_t k) const { return amps_[k]; }

    double norm_squared() const noexcept;
    /// Throws DataError when |norm^2 - 1| exceeds `tol`.
    void check_normalized(double tol = kNormTolerance) const;

    bool operator==(const StateVector &other) const = default;

  private:
    int n_qubits_;
    std::vector<Complex> amps_;
};

/// Dense unitary matrix on a power-of-two dimension.
class Unitary {
  public:
    /// Validates U^dagger U = I within 1e-10 (max-norm).
    explicit Unitary(Eigen::MatrixXcd matrix);

    int dim() const noexcept { return static_cast<int>(m_.rows()); }
    const Eigen::MatrixXcd &matrix() const noexcept { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

  private:
    Eigen::MatrixXcd m_;
};

/// Open-boundary brick-wall layout: layer l acts on pairs (q, q+1) with
/// q = l (mod 2), starting with the even layer.
struct BrickwallSpec {
    int n_qubits = 1;
    int depth = 0;

    void validate() const;
};

enum class QrPhase {
    kCorrected,
    // Plain QR without the r_jj/|r_jj| fix. Not Haar; only for fault injection.
    kSkipped,
};

StateVector sample_haar_state(int n_qubits, RngStream &rng);

/// Haar unitary via Ginibre QR with the diagonal phase correction.
Unitary sample_haar_unitary(int dim, RngStream &rng, QrPhase phase = QrPhase::kCorrected);

/// Applies a 4x4 gate to (q_low, q_high). The gate's local index is
/// bit(q_low) + 2 * bit(q_high).
void apply_two_qubit_gate(StateVector &state, const Unitary &gate, int q_low, int q_high);

StateVector sample_brickwall_state(const BrickwallSpec &spec, RngStream &rng);

enum class CliffordGate { H, S, CNOT };

/// `targets` is {q} for H and S, {control, target} for CNOT.
void apply_clifford_gate(StateVector &state, CliffordGate gate, std::span<const int> targets);

/// Product state with `a` on the low-index qubits.
StateVector tensor_product(const StateVector &a, const StateVector &b);

}  // namespace haarmagic
