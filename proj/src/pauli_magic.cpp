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

#include "haarmagic/pauli_magic.hpp"

#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "haarmagic/errors.hpp"

namespace haarmagic {

namespace {

// Neumaier compensated sum.
class CompensatedSum {
  public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};

void check_mask(const StateVector &state, PauliString pauli) {
    const uint32_t limit = uint32_t{1} << state.n_qubits();
    if (pauli.x_mask >= limit || pauli.z_mask >= limit) {
        throw ConfigError("Pauli mask does not fit in " + std::to_string(state.n_qubits()) + " qubits");
    }
}

MagicResult finish(int n_qubits, double sum_square, double sum_fourth) {
    const double d = std::ldexp(1.0, n_qubits);
    MagicResult r;
    r.xi_norm = sum_square / d;
    r.sum_fourth = sum_fourth;
    r.m2 = n_qubits - std::log2(sum_fourth);
    return r;
}

}  // namespace

double max_magic(int n_qubits) { return std::log2((std::ldexp(1.0, n_qubits) + 1.0) / 2.0); }

double pauli_expectation(const StateVector &state, PauliString pauli) {
    check_mask(state, pauli);
    const auto amps = state.amplitudes();
    Complex acc = 0;
    for (size_t k = 0; k < amps.size(); k++) {
        const Complex term = std::conj(amps[k ^ pauli.x_mask]) * amps[k];
        acc += (std::popcount(static_cast<uint32_t>(k) & pauli.z_mask) & 1) ? -term : term;
    }
    // Multiply by i^{|x & z|}.
    switch (std::popcount(pauli.x_mask & pauli.z_mask) & 3) {
        case 0:
            return acc.real();
        case 1:
            return -acc.imag();
        case 2:
            return -acc.real();
        default:
            return acc.imag();
    }
}

MagicResult sre_naive(const StateVector &state) {
    const int n = state.n_qubits();
    if (n > kMaxNaiveQubits) {
        throw CapabilityError("sre_naive supports N <= " + std::to_string(kMaxNaiveQubits) + " (got " +
                              std::to_string(n) + "); use sre_fast");
    }
    const uint32_t d = uint32_t{1} << n;
    CompensatedSum sq, quart;
    for (uint32_t x = 0; x < d; x++) {
        for (uint32_t z = 0; z < d; z++) {
            const double e = pauli_expectation(state, {x, z});
            const double e2 = e * e;
            sq.add(e2);
            quart.add(e2 * e2);
        }
    }
    return finish(n, sq.value(), quart.value());
}

namespace {

template <typename T>
void butterfly(std::span<T> v) {
    const size_t len = v.size();
    for (size_t h = 1; h < len; h <<= 1) {
        for (size_t i = 0; i < len; i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                const T a = v[j];
                const T b = v[j + h];
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
    }
}

}  // namespace

void walsh_hadamard_inplace(std::span<Complex> v) {
    const size_t len = v.size();
    if (len == 0 || (len & (len - 1)) != 0) {
        throw ConfigError("Walsh-Hadamard length must be a power of two, got " + std::to_string(len));
    }
    butterfly(v);
}

// For each X-sector x the correlation vector v_k = conj(psi_{k^x}) psi_k has
// WHT c(x, z) = <psi|X^x Z^z|psi>. Since v_{k^x} = conj(v_k), pairing k with
// k^x (keyed on the top bit j of x) gives
//   c(x, z) = 2 sum_{k_j = 0} (-1)^{z.k} Re v_k   when z.x is even,
//   c(x, z) = 2i sum_{k_j = 0} (-1)^{z.k} Im v_k  when z.x is odd,
// so two real transforms of length d/2 cover every z. Toggling z_j flips the
// parity of z.x, so each half-length output index is hit once by each branch.
MagicResult sre_fast(const StateVector &state) {
    const int n = state.n_qubits();
    if (n > kMaxQubits) {
        throw CapabilityError("sre_fast supports N <= " + std::to_string(kMaxQubits));
    }
    const auto amps = state.amplitudes();
    const size_t d = amps.size();
    CompensatedSum sq, quart;

    // x = 0: c(0, z) is the transform of the probabilities.
    {
        std::vector<double> p(d);
        for (size_t k = 0; k < d; k++) {
            p[k] = std::norm(amps[k]);
        }
        butterfly(std::span<double>(p));
        CompensatedSum s2, s4;
        for (double c : p) {
            const double c2 = c * c;
            s2.add(c2);
            s4.add(c2 * c2);
        }
        sq.add(s2.value());
        quart.add(s4.value());
    }

    const size_t half = d / 2;
    std::vector<double> re(half), im(half);
    for (size_t x = 1; x < d; x++) {
        const int j = std::bit_width(x) - 1;
        const size_t low_mask = (size_t{1} << j) - 1;
        for (size_t kp = 0; kp < half; kp++) {
            const size_t k = ((kp & ~low_mask) << 1) | (kp & low_mask);
            const Complex v = std::conj(amps[k ^ x]) * amps[k];
            re[kp] = v.real();
            im[kp] = v.imag();
        }
        butterfly(std::span<double>(re));
        butterfly(std::span<double>(im));
        CompensatedSum s2, s4;
        for (size_t kp = 0; kp < half; kp++) {
            const double a = 4.0 * re[kp] * re[kp];
            const double b = 4.0 * im[kp] * im[kp];
            s2.add(a + b);
            s4.add(a * a + b * b);
        }
        sq.add(s2.value());
        quart.add(s4.value());
    }
    return finish(n, sq.value(), quart.value());
}

}  // namespace haarmagic
