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

#include <cmath>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "gtest/gtest.h"

#include "haarmagic/entanglement.hpp"
#include "haarmagic/errors.hpp"
#include "haarmagic/oracles.hpp"
#include "haarmagic/pauli_magic.hpp"
#include "haarmagic/stats.hpp"

using namespace haarmagic;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void expect_amplitudes(const StateVector &s, const std::vector<Complex> &expected, double tol) {
    ASSERT_EQ(s.dim(), expected.size());
    for (size_t k = 0; k < expected.size(); k++) {
        EXPECT_NEAR(s[k].real(), expected[k].real(), tol) << "k=" << k;
        EXPECT_NEAR(s[k].imag(), expected[k].imag(), tol) << "k=" << k;
    }
}

Unitary cnot_after_h_on_low() {
    // Local index = bit(q_low) + 2 bit(q_high); control = q_low.
    Eigen::Matrix4cd h_low = Eigen::Matrix4cd::Zero();
    h_low(0, 0) = h_low(0, 1) = h_low(1, 0) = kInvSqrt2;
    h_low(1, 1) = -kInvSqrt2;
    h_low(2, 2) = h_low(2, 3) = h_low(3, 2) = kInvSqrt2;
    h_low(3, 3) = -kInvSqrt2;
    Eigen::Matrix4cd cnot = Eigen::Matrix4cd::Zero();
    cnot(0, 0) = 1;
    cnot(2, 2) = 1;
    cnot(3, 1) = 1;
    cnot(1, 3) = 1;
    return Unitary(cnot * h_low);
}

}  // namespace

TEST(state_vector, validates_length_and_norm) {
    EXPECT_THROW(StateVector(2, {1, 0, 0}), ConfigError);
    EXPECT_THROW(StateVector(1, {1, 1}), DataError);
    EXPECT_THROW(StateVector::basis(0), ConfigError);
    EXPECT_THROW(StateVector::basis(15), ConfigError);
    EXPECT_NO_THROW(StateVector::basis(14));
}

TEST(sample_haar_state, normalized_and_deterministic) {
    RngStream rng(1);
    const StateVector one = sample_haar_state(1, rng);
    EXPECT_NEAR(one.norm_squared(), 1.0, 1e-10);

    RngStream a = rng_stream_for(9, 3, 0);
    RngStream b = rng_stream_for(9, 3, 0);
    EXPECT_EQ(sample_haar_state(3, a), sample_haar_state(3, b));

    RngStream c(0);
    EXPECT_THROW(sample_haar_state(0, c), ConfigError);
    EXPECT_THROW(sample_haar_state(15, c), ConfigError);
}

TEST(sample_haar_state, first_moment_is_one_over_dim) {
    // Uniform sphere: E|psi_k|^2 = 1/d.
    MomentAccumulator acc;
    for (int i = 0; i < 10000; i++) {
        RngStream rng = rng_stream_for(11, 0, i);
        acc.update(std::norm(sample_haar_state(4, rng)[0]));
    }
    const double se = std::sqrt(acc.variance() / acc.count());
    EXPECT_NEAR(acc.mean(), 1.0 / 16, 3 * se);
}

TEST(sample_haar_unitary, unitary_and_rejects_small_dim) {
    RngStream rng(5);
    const Unitary u = sample_haar_unitary(2, rng);
    const Eigen::MatrixXcd defect = u.matrix().adjoint() * u.matrix() - Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_LT(defect.cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_THROW(sample_haar_unitary(1, rng), ConfigError);
    EXPECT_THROW(sample_haar_unitary(3, rng), ConfigError);
}

namespace {

struct UnitaryStats {
    std::vector<MomentAccumulator> entry_sq;
    std::vector<uint64_t> phase_bins;
};

UnitaryStats unitary_stats(int dim, QrPhase phase) {
    UnitaryStats st{std::vector<MomentAccumulator>(dim * dim), std::vector<uint64_t>(20, 0)};
    for (int i = 0; i < 10000; i++) {
        RngStream rng = rng_stream_for(21, dim, i);
        const Unitary u = sample_haar_unitary(dim, rng, phase);
        for (int r = 0; r < dim; r++) {
            for (int c = 0; c < dim; c++) {
                st.entry_sq[r * dim + c].update(std::norm(u(r, c)));
            }
        }
        const double arg = std::arg(u(0, 0));
        const auto bin = static_cast<size_t>((arg + std::numbers::pi) / (2 * std::numbers::pi) * 20);
        st.phase_bins[std::min<size_t>(bin, 19)]++;
    }
    return st;
}

double uniform_p_value(const std::vector<uint64_t> &bins) {
    double total = 0;
    for (auto b : bins) {
        total += b;
    }
    const double e = total / bins.size();
    double chi2 = 0;
    for (auto b : bins) {
        chi2 += (b - e) * (b - e) / e;
    }
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(bins.size() - 1.0), chi2));
}

}  // namespace

TEST(sample_haar_unitary, entry_moments_match_haar) {
    for (int dim : {2, 4}) {
        const UnitaryStats st = unitary_stats(dim, QrPhase::kCorrected);
        for (const auto &acc : st.entry_sq) {
            const double se = std::sqrt(acc.variance() / acc.count());
            EXPECT_NEAR(acc.mean(), 1.0 / dim, 3 * se) << "dim=" << dim;
        }
        EXPECT_GT(uniform_p_value(st.phase_bins), 1e-3) << "dim=" << dim;
    }
}

TEST(sample_haar_unitary, skipping_phase_fix_breaks_phase_uniformity) {
    const UnitaryStats st = unitary_stats(4, QrPhase::kSkipped);
    EXPECT_LT(uniform_p_value(st.phase_bins), 1e-3);
}

TEST(apply_two_qubit_gate, identity_and_bell) {
    StateVector s = StateVector::basis(2, 0);
    apply_two_qubit_gate(s, Unitary(Eigen::MatrixXcd::Identity(4, 4)), 0, 1);
    EXPECT_EQ(s, StateVector::basis(2, 0));

    apply_two_qubit_gate(s, cnot_after_h_on_low(), 0, 1);
    expect_amplitudes(s, {kInvSqrt2, 0, 0, kInvSqrt2}, 1e-12);
}

TEST(apply_two_qubit_gate, matches_dense_embedding) {
    for (int trial = 0; trial < 20; trial++) {
        RngStream rng = rng_stream_for(31, 0, trial);
        StateVector s = sample_haar_state(3, rng);
        const Unitary g = sample_haar_unitary(4, rng);
        const Eigen::VectorXcd expected = oracle::embed_two_qubit_gate(3, g.matrix(), 0, 2) * oracle::to_vector(s);
        apply_two_qubit_gate(s, g, 0, 2);
        EXPECT_LT((oracle::to_vector(s) - expected).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_NEAR(s.norm_squared(), 1.0, 1e-10);
    }
}

TEST(apply_two_qubit_gate, rejects_bad_targets) {
    StateVector s = StateVector::basis(3, 0);
    const Unitary id(Eigen::MatrixXcd::Identity(4, 4));
    EXPECT_THROW(apply_two_qubit_gate(s, id, 0, 3), ConfigError);
    EXPECT_THROW(apply_two_qubit_gate(s, id, -1, 1), ConfigError);
    EXPECT_THROW(apply_two_qubit_gate(s, id, 2, 1), ConfigError);
    EXPECT_THROW(apply_two_qubit_gate(s, Unitary(Eigen::MatrixXcd::Identity(2, 2)), 0, 1), ConfigError);
}

TEST(apply_two_qubit_gate, leaves_complement_reduced_state_alone) {
    // A gate on qubits (0,1) cannot change the spectrum across the cut at 2.
    for (int trial = 0; trial < 20; trial++) {
        RngStream rng = rng_stream_for(32, 0, trial);
        StateVector s = sample_haar_state(5, rng);
        const auto before = schmidt_spectrum(s, {2});
        apply_two_qubit_gate(s, sample_haar_unitary(4, rng), 0, 1);
        const auto after = schmidt_spectrum(s, {2});
        for (size_t k = 0; k < before.size(); k++) {
            EXPECT_NEAR(before[k], after[k], 1e-10);
        }
    }
}

TEST(sample_brickwall_state, zero_depth_is_reference_state) {
    RngStream rng(3);
    EXPECT_EQ(sample_brickwall_state({5, 0}, rng), StateVector::basis(5, 0));
    EXPECT_THROW(sample_brickwall_state({5, -1}, rng), ConfigError);
}

TEST(sample_brickwall_state, deterministic_and_normalized) {
    RngStream a = rng_stream_for(4, 1, 2);
    RngStream b = rng_stream_for(4, 1, 2);
    const StateVector sa = sample_brickwall_state({6, 12}, a);
    EXPECT_EQ(sa, sample_brickwall_state({6, 12}, b));
    EXPECT_NEAR(sa.norm_squared(), 1.0, 1e-9);
}

TEST(sample_brickwall_state, single_layer_on_two_qubits_matches_haar_magic) {
    // One Haar gate on |00> is a Haar state on two qubits.
    std::vector<double> bw, haar;
    for (int i = 0; i < 5000; i++) {
        RngStream r1 = rng_stream_for(41, 1, i);
        RngStream r2 = rng_stream_for(41, 2, i);
        bw.push_back(sre_fast(sample_brickwall_state({2, 1}, r1)).m2);
        haar.push_back(sre_fast(sample_haar_state(2, r2)).m2);
    }
    std::sort(bw.begin(), bw.end());
    std::sort(haar.begin(), haar.end());
    EXPECT_LT(ks_distance(bw, haar), 0.05);
}

TEST(apply_clifford_gate, textbook_actions) {
    StateVector s = StateVector::basis(1, 0);
    const int q0[] = {0};
    apply_clifford_gate(s, CliffordGate::H, q0);
    expect_amplitudes(s, {kInvSqrt2, kInvSqrt2}, 1e-12);
    apply_clifford_gate(s, CliffordGate::S, q0);
    expect_amplitudes(s, {kInvSqrt2, Complex(0, kInvSqrt2)}, 1e-12);

    // |10> in ket order is qubit 1 set: index 2. CNOT control 1 target 0 -> index 3.
    StateVector t = StateVector::basis(2, 2);
    const int ct[] = {1, 0};
    apply_clifford_gate(t, CliffordGate::CNOT, ct);
    EXPECT_EQ(t, StateVector::basis(2, 3));

    const int bad[] = {2};
    EXPECT_THROW(apply_clifford_gate(t, CliffordGate::H, bad), ConfigError);
    const int same[] = {1, 1};
    EXPECT_THROW(apply_clifford_gate(t, CliffordGate::CNOT, same), ConfigError);
}

TEST(tensor_product, bit_order_and_norm) {
    const StateVector p = tensor_product(StateVector::basis(1, 0), StateVector::basis(1, 1));
    EXPECT_EQ(p, StateVector::basis(2, 2));

    RngStream rng(8);
    const StateVector a = sample_haar_state(2, rng);
    const StateVector b = sample_haar_state(3, rng);
    const StateVector ab = tensor_product(a, b);
    EXPECT_EQ(ab.n_qubits(), 5);
    EXPECT_NEAR(ab.norm_squared(), 1.0, 1e-12);
    EXPECT_NEAR(sre_fast(ab).m2, sre_fast(a).m2 + sre_fast(b).m2, 1e-9);

    EXPECT_THROW(tensor_product(StateVector::basis(8), StateVector::basis(7)), ConfigError);
}

TEST(gates, norm_preserved_over_long_sequences) {
    RngStream rng(77);
    StateVector s = sample_haar_state(7, rng);
    for (int g = 0; g < 500; g++) {
        const int q = static_cast<int>(rng() % 6);
        apply_two_qubit_gate(s, sample_haar_unitary(4, rng), q, q + 1);
    }
    EXPECT_LT(std::abs(s.norm_squared() - 1.0), 1e-9);
}
