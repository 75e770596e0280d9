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

#include "haarmagic/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "haarmagic/errors.hpp"

namespace haarmagic {

void MomentAccumulator::update(double x) {
    if (paired_) {
        throw DataError("paired accumulator needs (x, y)");
    }
    if (!std::isfinite(x)) {
        throw DataError("non-finite observation");
    }
    MomentAccumulator one(false);
    one.count_ = 1;
    one.x_.mean = x;
    merge(one);
}

void MomentAccumulator::update(double x, double y) {
    if (!paired_) {
        throw DataError("unpaired accumulator takes a single value");
    }
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DataError("non-finite observation");
    }
    MomentAccumulator one(true);
    one.count_ = 1;
    one.x_.mean = x;
    one.y_.mean = y;
    merge(one);
}

void MomentAccumulator::merge_moments(Moments &a, const Moments &b, double na, double nb) const {
    const double n = na + nb;
    const double delta = b.mean - a.mean;
    const double d_n = delta / n;
    const double d2 = delta * delta;
    const double m2 = a.m2 + b.m2 + d2 * na * nb / n;
    const double m3 = a.m3 + b.m3 + d2 * delta * na * nb * (na - nb) / (n * n) + 3.0 * d_n * (na * b.m2 - nb * a.m2);
    const double m4 = a.m4 + b.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                      6.0 * d_n * d_n * (na * na * b.m2 + nb * nb * a.m2) + 4.0 * d_n * (na * b.m3 - nb * a.m3);
    a.mean += delta * nb / n;
    a.m2 = m2;
    a.m3 = m3;
    a.m4 = m4;
}

void MomentAccumulator::merge(const MomentAccumulator &other) {
    if (other.paired_ != paired_) {
        throw DataError("cannot merge paired and unpaired accumulators");
    }
    if (other.count_ == 0) {
        return;
    }
    if (count_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(count_);
    const double nb = static_cast<double>(other.count_);
    if (paired_) {
        const double dx = other.x_.mean - x_.mean;
        const double dy = other.y_.mean - y_.mean;
        co2_ += other.co2_ + dx * dy * na * nb / (na + nb);
        merge_moments(y_, other.y_, na, nb);
    }
    merge_moments(x_, other.x_, na, nb);
    count_ += other.count_;
}

double MomentAccumulator::variance() const {
    if (count_ < 2) {
        throw DataError("variance needs at least 2 observations");
    }
    return x_.m2 / static_cast<double>(count_ - 1);
}

double MomentAccumulator::variance_y() const {
    if (!paired_ || count_ < 2) {
        throw DataError("variance_y needs a paired accumulator with at least 2 observations");
    }
    return y_.m2 / static_cast<double>(count_ - 1);
}

double MomentAccumulator::covariance() const {
    if (!paired_ || count_ < 2) {
        throw DataError("covariance needs a paired accumulator with at least 2 observations");
    }
    return co2_ / static_cast<double>(count_ - 1);
}

namespace {

Cumulants cumulants_of(const MomentAccumulator::Moments &m, uint64_t count) {
    if (count < 4) {
        throw DataError("cumulants need at least 4 observations, got " + std::to_string(count));
    }
    const double n = static_cast<double>(count);
    Cumulants c;
    c.k1 = m.mean;
    c.k2 = m.m2 / (n - 1.0);
    c.k3 = m.m3 / n;
    c.k4 = m.m4 / n - 3.0 * c.k2 * c.k2;
    return c;
}

}  // namespace

double Cumulants::standardized_skew() const { return k2 > 0 ? k3 / std::pow(k2, 1.5) : 0.0; }

double Cumulants::standardized_excess() const { return k2 > 0 ? k4 / (k2 * k2) : 0.0; }

Cumulants cumulants(const MomentAccumulator &acc) { return cumulants_of(acc.x(), acc.count()); }

Cumulants cumulants_y(const MomentAccumulator &acc) {
    if (!acc.paired()) {
        throw DataError("cumulants_y needs a paired accumulator");
    }
    return cumulants_of(acc.y(), acc.count());
}

double correlation(const MomentAccumulator &acc) {
    if (!acc.paired() || acc.count() < 2) {
        throw DataError("correlation needs a paired accumulator with at least 2 observations");
    }
    if (!(acc.x().m2 > 0) || !(acc.y().m2 > 0)) {
        throw DataError("correlation undefined for zero variance");
    }
    const double r = acc.co2() / std::sqrt(acc.x().m2 * acc.y().m2);
    return std::clamp(r, -1.0, 1.0);
}

Histogram1D::Histogram1D(double lo, double hi, int n_bins) : lo_(lo), hi_(hi) {
    if (n_bins < 1 || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigError("histogram needs lo < hi and n_bins >= 1");
    }
    counts_.assign(static_cast<size_t>(n_bins), 0);
}

void Histogram1D::update(double x) {
    if (!(x >= lo_ && x <= hi_)) {
        out_of_range_++;
        return;
    }
    const auto bin = static_cast<int>((x - lo_) / bin_width());
    counts_[static_cast<size_t>(std::min(bin, n_bins() - 1))]++;
}

void Histogram1D::merge(const Histogram1D &other) {
    if (other.lo_ != lo_ || other.hi_ != hi_ || other.n_bins() != n_bins()) {
        throw DataError("cannot merge histograms with different binning");
    }
    for (size_t i = 0; i < counts_.size(); i++) {
        counts_[i] += other.counts_[i];
    }
    out_of_range_ += other.out_of_range_;
}

uint64_t Histogram1D::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), out_of_range_);
}

std::vector<double> Histogram1D::density() const {
    std::vector<double> out(counts_.size(), 0.0);
    const uint64_t t = total();
    if (t == 0) {
        return out;
    }
    const double scale = 1.0 / (static_cast<double>(t) * bin_width());
    for (size_t i = 0; i < counts_.size(); i++) {
        out[i] = static_cast<double>(counts_[i]) * scale;
    }
    return out;
}

Histogram2D::Histogram2D(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny)
    : x_axis_(x_lo, x_hi, nx), y_axis_(y_lo, y_hi, ny) {
    counts_.assign(static_cast<size_t>(nx) * static_cast<size_t>(ny), 0);
}

void Histogram2D::update(double x, double y) {
    if (!(x >= x_axis_.lo() && x <= x_axis_.hi() && y >= y_axis_.lo() && y <= y_axis_.hi())) {
        out_of_range_++;
        return;
    }
    const int ix = std::min(static_cast<int>((x - x_axis_.lo()) / x_axis_.bin_width()), nx() - 1);
    const int iy = std::min(static_cast<int>((y - y_axis_.lo()) / y_axis_.bin_width()), ny() - 1);
    counts_[static_cast<size_t>(ix) * ny() + iy]++;
}

uint64_t Histogram2D::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), out_of_range_);
}

LogSlopeFit fit_log2_slope(std::span<const ScalingPoint> points) {
    if (points.size() < 3) {
        throw DataError("slope fit needs at least 3 points, got " + std::to_string(points.size()));
    }
    double sx = 0, sy = 0;
    for (const auto &p : points) {
        if (!(p.value > 0) || !std::isfinite(p.value)) {
            throw DataError("slope fit needs positive finite values");
        }
        sx += p.n;
        sy += std::log2(p.value);
    }
    const double k = static_cast<double>(points.size());
    const double mx = sx / k;
    const double my = sy / k;
    double sxx = 0, sxy = 0;
    for (const auto &p : points) {
        const double dx = p.n - mx;
        sxx += dx * dx;
        sxy += dx * (std::log2(p.value) - my);
    }
    if (sxx == 0) {
        throw DataError("slope fit needs at least two distinct n");
    }
    LogSlopeFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (const auto &p : points) {
        const double r = std::log2(p.value) - (fit.intercept + fit.slope * p.n);
        fit.max_residual = std::max(fit.max_residual, std::abs(r));
    }
    return fit;
}

double ks_distance(std::span<const double> sorted_a, std::span<const double> sorted_b) {
    if (sorted_a.empty() || sorted_b.empty()) {
        throw DataError("ks_distance needs non-empty samples");
    }
    if (!std::is_sorted(sorted_a.begin(), sorted_a.end()) || !std::is_sorted(sorted_b.begin(), sorted_b.end())) {
        throw DataError("ks_distance needs sorted samples");
    }
    const double na = static_cast<double>(sorted_a.size());
    const double nb = static_cast<double>(sorted_b.size());
    size_t i = 0, j = 0;
    double best = 0;
    while (i < sorted_a.size() && j < sorted_b.size()) {
        // Step past every copy of the smallest pending value so ties move both CDFs together.
        const double v = std::min(sorted_a[i], sorted_b[j]);
        while (i < sorted_a.size() && sorted_a[i] == v) {
            i++;
        }
        while (j < sorted_b.size() && sorted_b[j] == v) {
            j++;
        }
        best = std::max(best, std::abs(i / na - j / nb));
    }
    return best;
}

nlohmann::json to_json(const Cumulants &c) {
    return {{"k1", c.k1}, {"k2", c.k2}, {"k3", c.k3}, {"k4", c.k4}};
}

nlohmann::json to_json(const Histogram1D &h) {
    return {{"lo", h.lo()}, {"hi", h.hi()}, {"n_bins", h.n_bins()}, {"counts", h.counts()},
            {"out_of_range", h.out_of_range()}};
}

nlohmann::json to_json(const Histogram2D &h) {
    return {{"x_lo", h.x_axis().lo()}, {"x_hi", h.x_axis().hi()}, {"nx", h.nx()},
            {"y_lo", h.y_axis().lo()}, {"y_hi", h.y_axis().hi()}, {"ny", h.ny()},
            {"counts", h.counts()},    {"out_of_range", h.out_of_range()}};
}

nlohmann::json to_json(const LogSlopeFit &f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"max_residual", f.max_residual}};
}

}  // namespace haarmagic
