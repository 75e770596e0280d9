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

#include "haarmagic/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "haarmagic/errors.hpp"

namespace haarmagic {

namespace {

constexpr double kEigenFloor = 1e-12;

}  // namespace

std::vector<double> schmidt_spectrum(const StateVector &state, CutSpec cut) {
    const int n = state.n_qubits();
    if (cut.n_a < 1 || cut.n_a > n - 1) {
        throw ConfigError("cut n_a must be in [1, " + std::to_string(n - 1) + "], got " + std::to_string(cut.n_a));
    }
    const Eigen::Index rows = Eigen::Index{1} << cut.n_a;
    const Eigen::Index cols = Eigen::Index{1} << (n - cut.n_a);
    // Column-major view: row = low bits (A), column = high bits (B).
    const Eigen::Map<const Eigen::MatrixXcd> psi(state.amplitudes().data(), rows, cols);
    std::vector<double> out;
    if (std::min(rows, cols) <= 16) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(psi);
        const auto &sv = svd.singularValues();
        out.assign(sv.data(), sv.data() + sv.size());
    } else {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(psi);
        const auto &sv = svd.singularValues();
        out.assign(sv.data(), sv.data() + sv.size());
    }
    for (double &x : out) {
        x *= x;
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double von_neumann_entropy(std::span<const double> schmidt_sq) {
    double total = 0;
    for (double l : schmidt_sq) {
        if (!std::isfinite(l)) {
            throw DataError("non-finite Schmidt weight");
        }
        total += l;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw DataError("Schmidt weights sum to " + std::to_string(total) + ", expected 1");
    }
    double s = 0;
    for (double l : schmidt_sq) {
        if (l < kEigenFloor) {
            continue;
        }
        l = std::min(l, 1.0);
        s -= l * std::log2(l);
    }
    return s;
}

EntropyResult entanglement_entropy(const StateVector &state, CutSpec cut) {
    EntropyResult r;
    r.schmidt_sq = schmidt_spectrum(state, cut);
    r.s = von_neumann_entropy(r.schmidt_sq);
    return r;
}

double page_entropy(int n_a, int n_b) {
    if (n_a > n_b) {
        std::swap(n_a, n_b);
    }
    if (n_a < 0 || n_b > 30) {
        throw ConfigError("page_entropy subsystem sizes out of range");
    }
    const double m = std::ldexp(1.0, n_a);
    const double big = std::ldexp(1.0, n_b);
    const auto upper = static_cast<long long>(m * big);
    double harmonic = 0;
    // Summed smallest-first.
    for (long long k = upper; k > static_cast<long long>(big); k--) {
        harmonic += 1.0 / static_cast<double>(k);
    }
    return (harmonic - (m - 1.0) / (2.0 * big)) / std::numbers::ln2;
}

}  // namespace haarmagic
