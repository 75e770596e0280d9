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
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "haarmagic/stats.hpp"

namespace haarmagic {

inline constexpr int kSchemaVersion = 1;
inline constexpr int kDefaultBins = 101;

enum class SamplingMode { kHaar, kBrickwall };

std::string to_string(SamplingMode mode);
SamplingMode parse_mode(const std::string &text);

/// Declarative description of a sampling campaign.
struct ExperimentConfig {
    SamplingMode mode = SamplingMode::kHaar;
    std::vector<int> n_qubits_list;
    std::vector<int> depth_list;  // brick-wall only
    std::optional<int> samples_per_point;  // unset: default_samples(N)
    uint64_t seed = 0;
    std::optional<int> cut;  // unset: floor(N/2)
    std::filesystem::path records_path;
    std::filesystem::path summary_path;
    int workers = 1;
    std::string experiment_id;  // empty: derived from mode and seed

    /// Throws ConfigError for malformed fields, CapabilityError for N > 14.
    void validate() const;
    int samples_for(int n_qubits) const;
    int cut_for(int n_qubits) const;
    std::string id() const;
};

/// 2000 for N <= 10, 500 for N in {11, 12}, 100 above.
int default_samples(int n_qubits);

struct SampleRecord {
    std::string experiment_id;
    SamplingMode mode = SamplingMode::kHaar;
    int n_qubits = 0;
    int depth = -1;  // -1 for Haar
    int sample_index = 0;
    double m2 = 0;
    double s = 0;
};

/// Aggregates for one (N, depth) point.
struct PointSummary {
    int n_qubits = 0;
    int depth = -1;
    int cut_n_a = 0;
    MomentAccumulator acc{true};  // x = m2, y = s
    Histogram1D m2_hist{0, 1, 1};
    Histogram1D s_hist{0, 1, 1};
    Histogram2D joint{0, 1, 1, 0, 1, 1};
};

struct ConvergenceRow {
    int n_qubits = 0;
    int depth = 0;
    double ks = 0;
};

struct ScalingRow {
    int n_qubits = 0;
    double var_m2 = 0;
    double var_s = 0;
    double cov = 0;
    double pearson_r = 0;
};

struct ScalingFits {
    std::optional<LogSlopeFit> var_m2;
    std::optional<LogSlopeFit> var_s;
    std::optional<LogSlopeFit> abs_cov;
    std::optional<LogSlopeFit> geometric_mean;  // of sqrt(var_m2 * var_s)
};

struct CampaignResult {
    std::string kind;  // "distribution", "convergence" or "scaling"
    ExperimentConfig config;
    std::vector<SampleRecord> records;
    std::vector<PointSummary> points;
    std::vector<ConvergenceRow> convergence;
    std::vector<ScalingRow> scaling;
    ScalingFits fits;
    std::vector<std::string> warnings;
};

/// Stable per-point stream id, independent of list order.
uint64_t point_id(SamplingMode mode, int n_qubits, int depth);

/// Samples one point. Results are ordered by sample index and do not depend
/// on `workers`.
std::vector<SampleRecord> sample_point(const ExperimentConfig &config, SamplingMode mode, int n_qubits, int depth,
                                       int samples);

/// Accumulators and histograms for a block of records from one point.
PointSummary summarize_point(std::span<const SampleRecord> records, int cut_n_a);

/// In-memory campaigns; the run_* functions below also persist outputs.
CampaignResult compute_distribution(const ExperimentConfig &config);
CampaignResult compute_brickwall_sweep(const ExperimentConfig &config);
CampaignResult compute_scaling(const ExperimentConfig &config);

CampaignResult run_distribution(const ExperimentConfig &config);
CampaignResult run_brickwall_sweep(const ExperimentConfig &config);
CampaignResult run_scaling(const ExperimentConfig &config);

void write_records_csv(std::ostream &out, std::span<const SampleRecord> records);
std::vector<SampleRecord> read_records_csv(std::istream &in);
nlohmann::json summary_json(const CampaignResult &result);

/// Writes records and summary to the config paths through ".partial" files
/// renamed on success; a leftover ".partial" marks an interrupted write.
void write_outputs(const CampaignResult &result);

}  // namespace haarmagic
