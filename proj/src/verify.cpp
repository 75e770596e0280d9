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

#include "haarmagic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "haarmagic/entanglement.hpp"
#include "haarmagic/errors.hpp"
#include "haarmagic/oracles.hpp"
#include "haarmagic/pauli_magic.hpp"
#include "haarmagic/rng.hpp"
#include "haarmagic/runner.hpp"
#include "haarmagic/state.hpp"
#include "haarmagic/stats.hpp"

namespace haarmagic {

namespace {

constexpr double kTol = 1e-9;

std::string describe(const char *what, double value) {
    std::ostringstream ss;
    ss << what << " = " << value;
    return ss.str();
}

CheckResult max_deviation_check(std::string name, double worst, double tol) {
    return {std::move(name), worst < tol, describe("max deviation", worst)};
}

// Sample mean within `sigmas` standard errors of `expected`.
bool within_standard_errors(const MomentAccumulator &acc, double expected, double sigmas) {
    const double se = std::sqrt(acc.variance() / static_cast<double>(acc.count()));
    return std::abs(acc.mean() - expected) <= sigmas * se;
}

double chi_square_uniform_p(const std::vector<uint64_t> &counts) {
    uint64_t total = 0;
    for (auto c : counts) {
        total += c;
    }
    const double expected = static_cast<double>(total) / counts.size();
    double chi2 = 0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        chi2 += d * d / expected;
    }
    boost::math::chi_squared dist(static_cast<double>(counts.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, chi2));
}

void random_clifford_word(StateVector &state, RngStream &rng, int length) {
    const int n = state.n_qubits();
    for (int g = 0; g < length; g++) {
        const auto kind = static_cast<int>(rng() % (n >= 2 ? 3 : 2));
        if (kind == 2) {
            const int c = static_cast<int>(rng() % n);
            int t = static_cast<int>(rng() % (n - 1));
            if (t >= c) {
                t++;
            }
            const int targets[] = {c, t};
            apply_clifford_gate(state, CliffordGate::CNOT, targets);
        } else {
            const int targets[] = {static_cast<int>(rng() % n)};
            apply_clifford_gate(state, kind == 0 ? CliffordGate::H : CliffordGate::S, targets);
        }
    }
}

// Same state with qubit k relabeled as n-1-k, so the low block becomes the high block.
StateVector reverse_qubits(const StateVector &s) {
    const int n = s.n_qubits();
    std::vector<Complex> amps(s.dim());
    for (size_t k = 0; k < s.dim(); k++) {
        size_t r = 0;
        for (int q = 0; q < n; q++) {
            r |= ((k >> q) & 1) << (n - 1 - q);
        }
        amps[r] = s[k];
    }
    return StateVector(n, std::move(amps));
}

int random_n(RngStream &rng, int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1)); }

class Suite {
  public:
    explicit Suite(const VerifyOptions &o) : opt_(o) {}

    RngStream stream(uint64_t check_id, uint64_t trial) const { return rng_stream_for(opt_.seed, 1000 + check_id, trial); }

    CheckResult haar_state_moment() const {
        MomentAccumulator acc;
        double worst_norm = 0;
        for (int i = 0; i < 10000; i++) {
            RngStream rng = stream(1, i);
            const StateVector s = sample_haar_state(4, rng);
            worst_norm = std::max(worst_norm, std::abs(s.norm_squared() - 1.0));
            acc.update(std::norm(s[0]));
        }
        const bool ok = within_standard_errors(acc, 1.0 / 16, 3.0) && worst_norm < 1e-10;
        return {"haar-state-moment", ok, describe("E|psi_0|^2 (expect 0.0625)", acc.mean())};
    }

    CheckResult haar_unitary_moments() const {
        const QrPhase phase = opt_.skip_qr_phase ? QrPhase::kSkipped : QrPhase::kCorrected;
        bool ok = true;
        std::ostringstream detail;
        for (int dim : {2, 4}) {
            std::vector<MomentAccumulator> sq(static_cast<size_t>(dim * dim));
            MomentAccumulator re00, im00;
            std::vector<uint64_t> phase_bins(20, 0);
            for (int i = 0; i < 10000; i++) {
                RngStream rng = stream(2 + dim, i);
                const Unitary u = sample_haar_unitary(dim, rng, phase);
                for (int r = 0; r < dim; r++) {
                    for (int c = 0; c < dim; c++) {
                        sq[static_cast<size_t>(r * dim + c)].update(std::norm(u(r, c)));
                    }
                }
                re00.update(u(0, 0).real());
                im00.update(u(0, 0).imag());
                const double arg = std::arg(u(0, 0));
                const auto bin = static_cast<size_t>((arg + std::numbers::pi) / (2 * std::numbers::pi) * 20);
                phase_bins[std::min<size_t>(bin, 19)]++;
            }
            for (const auto &acc : sq) {
                ok = ok && within_standard_errors(acc, 1.0 / dim, 3.0);
            }
            ok = ok && within_standard_errors(re00, 0.0, 3.0) && within_standard_errors(im00, 0.0, 3.0);
            const double p = chi_square_uniform_p(phase_bins);
            ok = ok && p > 1e-3;
            detail << "dim " << dim << ": E[Re U00] = " << re00.mean() << ", arg(U00) chi2 p = " << p << "; ";
        }
        return {"haar-unitary-moments", ok, detail.str()};
    }

    CheckResult gate_dense_oracle() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(5, t);
            const int n = random_n(rng, 2, 5);
            StateVector s = sample_haar_state(n, rng);
            const int q1 = random_n(rng, 0, n - 2);
            const int q2 = random_n(rng, q1 + 1, n - 1);
            const Unitary g = sample_haar_unitary(4, rng);
            const Eigen::VectorXcd expected = oracle::embed_two_qubit_gate(n, g.matrix(), q1, q2) * oracle::to_vector(s);
            apply_two_qubit_gate(s, g, q1, q2);
            worst = std::max(worst, (oracle::to_vector(s) - expected).cwiseAbs().maxCoeff());
        }
        return max_deviation_check("gate-dense-oracle", worst, 1e-10);
    }

    CheckResult norm_preservation() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(6, t);
            const int n = random_n(rng, 2, 8);
            const StateVector s = sample_brickwall_state(BrickwallSpec{n, 3 * n}, rng);
            worst = std::max(worst, std::abs(s.norm_squared() - 1.0));
        }
        return max_deviation_check("norm-preservation", worst, kTol);
    }

    CheckResult sre_oracle_equivalence() const {
        double worst = 0;
        for (int n = 1; n <= 6; n++) {
            for (int t = 0; t < opt_.trials; t++) {
                RngStream rng = stream(7, static_cast<uint64_t>(n) * 100000 + t);
                const StateVector s = sample_haar_state(n, rng);
                worst = std::max(worst, std::abs(sre_fast(s).m2 - sre_naive(s).m2));
            }
        }
        return max_deviation_check("sre-fast-vs-naive", worst, kTol);
    }

    CheckResult sre_definition_oracle() const {
        double worst = 0;
        for (int t = 0; t < std::min(opt_.trials, 50); t++) {
            RngStream rng = stream(8, t);
            const StateVector s = sample_haar_state(random_n(rng, 1, 3), rng);
            worst = std::max(worst, std::abs(sre_fast(s).m2 - oracle::magic_from_definition(s)));
        }
        return max_deviation_check("sre-vs-dense-definition", worst, kTol);
    }

    CheckResult purity_identity() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(9, t);
            const StateVector s = sample_haar_state(random_n(rng, 1, 8), rng);
            worst = std::max(worst, std::abs(sre_fast(s).xi_norm - 1.0));
        }
        return max_deviation_check("purity-identity", worst, kTol);
    }

    CheckResult clifford_invariance() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(10, t);
            StateVector s = sample_haar_state(random_n(rng, 1, 6), rng);
            const double before = sre_fast(s).m2;
            random_clifford_word(s, rng, 20);
            worst = std::max(worst, std::abs(sre_fast(s).m2 - before));
        }
        return max_deviation_check("clifford-invariance", worst, kTol);
    }

    CheckResult stabilizer_zero() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(11, t);
            StateVector s = StateVector::basis(random_n(rng, 1, 7), 0);
            random_clifford_word(s, rng, 20);
            worst = std::max(worst, std::abs(sre_fast(s).m2));
        }
        return max_deviation_check("stabilizer-zero", worst, kTol);
    }

    CheckResult additivity() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(12, t);
            const StateVector a = sample_haar_state(random_n(rng, 1, 4), rng);
            const StateVector b = sample_haar_state(random_n(rng, 1, 4), rng);
            worst = std::max(worst, std::abs(sre_fast(tensor_product(a, b)).m2 - sre_fast(a).m2 - sre_fast(b).m2));
        }
        return max_deviation_check("additivity", worst, kTol);
    }

    CheckResult magic_bounds() const {
        bool ok = true;
        double worst_excess = -1;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(13, t);
            const int n = random_n(rng, 1, 9);
            const StateVector s = (t % 2) ? sample_haar_state(n, rng)
                                          : sample_brickwall_state(BrickwallSpec{n, random_n(rng, 0, 2 * n)}, rng);
            const double m2 = sre_fast(s).m2;
            ok = ok && m2 >= -kTol && m2 <= max_magic(n) + kTol;
            worst_excess = std::max(worst_excess, m2 - max_magic(n));
        }
        return {"magic-bounds", ok, describe("max (M2 - bound)", worst_excess)};
    }

    CheckResult single_qubit_maximum() const {
        // Bloch vector (1,1,1)/sqrt(3): theta = arccos(1/sqrt 3), phi = pi/4.
        const double theta = std::acos(1.0 / std::sqrt(3.0));
        const Complex a0 = std::cos(theta / 2);
        const Complex a1 = std::polar(std::sin(theta / 2), std::numbers::pi / 4);
        const StateVector s(1, {a0, a1});
        const double dev = std::abs(sre_fast(s).m2 - std::log2(1.5));
        return max_deviation_check("single-qubit-magic-log2(3/2)", dev, kTol);
    }

    CheckResult schmidt_symmetry() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(14, t);
            const int n = random_n(rng, 2, 8);
            const StateVector s = sample_haar_state(n, rng);
            const int na = random_n(rng, 1, n - 1);
            const double s_a = entanglement_entropy(s, {na}).s;
            const double s_b = entanglement_entropy(reverse_qubits(s), {n - na}).s;
            worst = std::max(worst, std::abs(s_a - s_b));
        }
        return max_deviation_check("schmidt-symmetry", worst, kTol);
    }

    CheckResult local_unitary_invariance() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(15, t);
            const int n = random_n(rng, 4, 8);
            const int na = random_n(rng, 2, n - 2);
            StateVector s = sample_haar_state(n, rng);
            const double before = entanglement_entropy(s, {na}).s;
            // One gate inside A, one inside B.
            const int qa = random_n(rng, 0, na - 2);
            apply_two_qubit_gate(s, sample_haar_unitary(4, rng), qa, qa + 1);
            const int qb = random_n(rng, na, n - 2);
            apply_two_qubit_gate(s, sample_haar_unitary(4, rng), qb, qb + 1);
            worst = std::max(worst, std::abs(entanglement_entropy(s, {na}).s - before));
        }
        return max_deviation_check("local-unitary-invariance", worst, kTol);
    }

    CheckResult partial_trace_oracle() const {
        double worst = 0;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(16, t);
            const int n = random_n(rng, 2, 7);
            const int na = random_n(rng, 1, n - 1);
            const StateVector s = sample_haar_state(n, rng);
            const auto fast = schmidt_spectrum(s, {na});
            const auto dense = oracle::reduced_density_eigenvalues(s, na);
            for (size_t k = 0; k < std::max(fast.size(), dense.size()); k++) {
                const double a = k < fast.size() ? fast[k] : 0.0;
                const double b = k < dense.size() ? dense[k] : 0.0;
                worst = std::max(worst, std::abs(a - b));
            }
        }
        return max_deviation_check("partial-trace-oracle", worst, kTol);
    }

    CheckResult page_oracle() const {
        const double closed = 1.0 / (3.0 * std::numbers::ln2);
        bool ok = std::abs(page_entropy(1, 1) - closed) < 1e-12;
        MomentAccumulator acc;
        for (int i = 0; i < 20000; i++) {
            RngStream rng = stream(17, i);
            acc.update(entanglement_entropy(sample_haar_state(2, rng), {1}).s);
        }
        ok = ok && within_standard_errors(acc, page_entropy(1, 1), 3.0);
        std::ostringstream detail;
        detail << "mean S(N=2) = " << acc.mean() << ", Page = " << page_entropy(1, 1);
        return {"page-oracle", ok, detail.str()};
    }

    CheckResult merge_equivalence() const {
        double worst = 0;
        std::normal_distribution<double> normal;
        for (int t = 0; t < opt_.trials; t++) {
            RngStream rng = stream(18, t);
            const int len = random_n(rng, 4, 400);
            const int split = random_n(rng, 0, len);
            MomentAccumulator whole(true), left(true), right(true);
            for (int i = 0; i < len; i++) {
                const double x = 3.0 + normal(rng);
                const double y = 0.5 * x + std::exp(normal(rng));
                whole.update(x, y);
                (i < split ? left : right).update(x, y);
            }
            left.merge(right);
            auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
            // m3 of a near-symmetric sample can sit at zero; measure it against its natural scale.
            auto rel3 = [&](double a, double b, double m2) {
                const double scale = std::pow(m2, 1.5) / std::sqrt(static_cast<double>(len));
                return std::abs(a - b) / std::max({std::abs(a), std::abs(b), scale, 1e-300});
            };
            worst = std::max({worst, rel(whole.mean(), left.mean()), rel(whole.x().m2, left.x().m2),
                              rel3(whole.x().m3, left.x().m3, whole.x().m2), rel(whole.x().m4, left.x().m4),
                              rel(whole.y().m2, left.y().m2), rel3(whole.y().m3, left.y().m3, whole.y().m2),
                              rel(whole.y().m4, left.y().m4), rel(whole.co2(), left.co2())});
        }
        return max_deviation_check("merge-equivalence", worst, 1e-9);
    }

    CheckResult scheduling_independence() const {
        ExperimentConfig cfg;
        cfg.mode = SamplingMode::kHaar;
        cfg.n_qubits_list = {2, 3, 5};
        cfg.samples_per_point = 200;
        cfg.seed = opt_.seed;
        std::ostringstream one, many;
        cfg.workers = 1;
        write_records_csv(one, compute_distribution(cfg).records);
        cfg.workers = std::max(4, opt_.workers);
        write_records_csv(many, compute_distribution(cfg).records);
        return {"scheduling-independence", one.str() == many.str(), "workers 1 vs " + std::to_string(cfg.workers)};
    }

  private:
    VerifyOptions opt_;
};

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions &options) {
    if (options.trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    const Suite suite(options);
    std::vector<std::function<CheckResult()>> checks = {
        [&] { return suite.haar_state_moment(); },      [&] { return suite.haar_unitary_moments(); },
        [&] { return suite.gate_dense_oracle(); },      [&] { return suite.norm_preservation(); },
        [&] { return suite.sre_oracle_equivalence(); }, [&] { return suite.sre_definition_oracle(); },
        [&] { return suite.purity_identity(); },        [&] { return suite.clifford_invariance(); },
        [&] { return suite.stabilizer_zero(); },        [&] { return suite.additivity(); },
        [&] { return suite.magic_bounds(); },           [&] { return suite.single_qubit_maximum(); },
        [&] { return suite.schmidt_symmetry(); },       [&] { return suite.local_unitary_invariance(); },
        [&] { return suite.partial_trace_oracle(); },   [&] { return suite.page_oracle(); },
        [&] { return suite.merge_equivalence(); },      [&] { return suite.scheduling_independence(); },
    };
    std::vector<CheckResult> out;
    out.reserve(checks.size());
    for (const auto &check : checks) {
        out.push_back(check());
    }
    return out;
}

}  // namespace haarmagic
