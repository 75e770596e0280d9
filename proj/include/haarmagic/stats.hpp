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

#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"

namespace haarmagic {

/// Mergeable single-pass central moments up to order 4, for one observable
/// or a pair (x, y) with their cross-moment. Update and merge use the
/// pairwise formulas of Chan et al. / Pebay, so a split-and-merged stream
/// matches the unsplit one to rounding.
class MomentAccumulator {
  public:
    struct Moments {
        double mean = 0;
        double m2 = 0;  // sum of (v - mean)^2
        double m3 = 0;
        double m4 = 0;
    };

    explicit MomentAccumulator(bool paired = false) : paired_(paired) {}

    void update(double x);
    void update(double x, double y);
    void merge(const MomentAccumulator &other);

    bool paired() const noexcept { return paired_; }
    uint64_t count() const noexcept { return count_; }
    const Moments &x() const noexcept { return x_; }
    const Moments &y() const noexcept { return y_; }
    double mean() const noexcept { return x_.mean; }
    double mean_y() const noexcept { return y_.mean; }
    /// Sum of centered cross products.
    double co2() const noexcept { return co2_; }

    /// Sample (n - 1) variance.
    double variance() const;
    double variance_y() const;
    /// Sample (n - 1) covariance.
    double covariance() const;

  private:
    void merge_moments(Moments &a, const Moments &b, double na, double nb) const;

    bool paired_;
    uint64_t count_ = 0;
    Moments x_;
    Moments y_;
    double co2_ = 0;
};

struct Cumulants {
    double k1 = 0;  // mean
    double k2 = 0;  // sample variance m2/(n-1)
    double k3 = 0;  // central third moment m3/n
    double k4 = 0;  // m4/n - 3 k2^2

    double standardized_skew() const;
    double standardized_excess() const;
};

/// Requires count >= 4.
Cumulants cumulants(const MomentAccumulator &acc);
Cumulants cumulants_y(const MomentAccumulator &acc);

/// Pearson r of a paired accumulator.
double correlation(const MomentAccumulator &acc);

class Histogram1D {
  public:
    Histogram1D(double lo, double hi, int n_bins);

    void update(double x);
    void merge(const Histogram1D &other);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    int n_bins() const noexcept { return static_cast<int>(counts_.size()); }
    double bin_width() const noexcept { return (hi_ - lo_) / n_bins(); }
    const std::vector<uint64_t> &counts() const noexcept { return counts_; }
    uint64_t out_of_range() const noexcept { return out_of_range_; }
    uint64_t total() const noexcept;

    /// counts / (total * bin_width); integrates to 1 minus the out-of-range share.
    std::vector<double> density() const;

  private:
    double lo_, hi_;
    std::vector<uint64_t> counts_;
    uint64_t out_of_range_ = 0;
};

/// Counts are row-major: index = ix * ny + iy.
class Histogram2D {
  public:
    Histogram2D(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny);

    void update(double x, double y);

    const Histogram1D &x_axis() const noexcept { return x_axis_; }
    const Histogram1D &y_axis() const noexcept { return y_axis_; }
    int nx() const noexcept { return x_axis_.n_bins(); }
    int ny() const noexcept { return y_axis_.n_bins(); }
    uint64_t at(int ix, int iy) const { return counts_[static_cast<size_t>(ix) * ny() + iy]; }
    const std::vector<uint64_t> &counts() const noexcept { return counts_; }
    uint64_t out_of_range() const noexcept { return out_of_range_; }
    uint64_t total() const noexcept;

  private:
    Histogram1D x_axis_, y_axis_;  // only used for bin geometry
    std::vector<uint64_t> counts_;
    uint64_t out_of_range_ = 0;
};

struct ScalingPoint {
    int n = 0;
    double value = 0;
};

struct LogSlopeFit {
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
};

/// Least squares of log2(value) against n.
LogSlopeFit fit_log2_slope(std::span<const ScalingPoint> points);

/// Two-sample Kolmogorov-Smirnov statistic. Both inputs must be sorted.
double ks_distance(std::span<const double> sorted_a, std::span<const double> sorted_b);

nlohmann::json to_json(const Cumulants &c);
nlohmann::json to_json(const Histogram1D &h);
nlohmann::json to_json(const Histogram2D &h);
nlohmann::json to_json(const LogSlopeFit &f);

}  // namespace haarmagic
