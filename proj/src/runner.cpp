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

#include "haarmagic/runner.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "haarmagic/entanglement.hpp"
#include "haarmagic/errors.hpp"
#include "haarmagic/pauli_magic.hpp"
#include "haarmagic/rng.hpp"
#include "haarmagic/state.hpp"

namespace haarmagic {

namespace {

constexpr double kBoundSlack = 1e-9;

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string &text) {
    double v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DataError("malformed number in records: '" + text + "'");
    }
    return v;
}

int parse_int(const std::string &text) {
    int v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DataError("malformed integer in records: '" + text + "'");
    }
    return v;
}

void check_bounds(const SampleRecord &r, int cut_n_a) {
    const double m2_hi = max_magic(r.n_qubits) + kBoundSlack;
    const double s_hi = std::min(cut_n_a, r.n_qubits - cut_n_a) + kBoundSlack;
    if (!(r.m2 >= -kBoundSlack && r.m2 <= m2_hi)) {
        throw DataError("m2 = " + format_double(r.m2) + " outside [0, log2((2^N+1)/2)] at N=" +
                        std::to_string(r.n_qubits));
    }
    if (!(r.s >= -kBoundSlack && r.s <= std::max(s_hi, kBoundSlack))) {
        throw DataError("s = " + format_double(r.s) + " outside [0, min(n_a, n_b)] at N=" +
                        std::to_string(r.n_qubits));
    }
}

// Runs body(i) for i in [0, count) on `workers` threads.
template <typename Body>
void parallel_for(int count, int workers, Body body) {
    workers = std::clamp(workers, 1, std::max(count, 1));
    if (workers == 1) {
        for (int i = 0; i < count; i++) {
            body(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; w++) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                    next = count;
                }
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

std::vector<PointSummary> summarize_records(const ExperimentConfig &config, std::span<const SampleRecord> records) {
    std::vector<PointSummary> out;
    size_t start = 0;
    while (start < records.size()) {
        size_t end = start;
        while (end < records.size() && records[end].n_qubits == records[start].n_qubits &&
               records[end].depth == records[start].depth && records[end].mode == records[start].mode) {
            end++;
        }
        out.push_back(summarize_point(records.subspan(start, end - start), config.cut_for(records[start].n_qubits)));
        start = end;
    }
    return out;
}

void append(std::vector<SampleRecord> &into, std::vector<SampleRecord> from) {
    into.insert(into.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

void write_file(const std::filesystem::path &path, const std::string &contents) {
    if (path.empty()) {
        return;
    }
    std::filesystem::path partial = path;
    partial += ".partial";
    try {
        if (path.has_parent_path()) {
            std::filesystem::create_directories(path.parent_path());
        }
        {
            std::ofstream f(partial, std::ios::binary | std::ios::trunc);
            if (!f) {
                throw IoError("cannot open " + partial.string() + " for writing");
            }
            f << contents;
            f.flush();
            if (!f) {
                throw IoError("write failed for " + partial.string());
            }
        }
        std::filesystem::rename(partial, path);
    } catch (const std::filesystem::filesystem_error &e) {
        throw IoError(e.what());
    }
}

nlohmann::json moments_json(const Cumulants &c) {
    return {{"mean", c.k1}, {"var", c.k2}, {"k3", c.k3}, {"k4", c.k4}};
}

nlohmann::json optional_json(double v, bool valid) { return valid ? nlohmann::json(v) : nlohmann::json(nullptr); }

}  // namespace

std::string to_string(SamplingMode mode) { return mode == SamplingMode::kHaar ? "haar" : "brickwall"; }

SamplingMode parse_mode(const std::string &text) {
    if (text == "haar") {
        return SamplingMode::kHaar;
    }
    if (text == "brickwall") {
        return SamplingMode::kBrickwall;
    }
    throw ConfigError("unknown mode '" + text + "' (expected haar or brickwall)");
}

int default_samples(int n_qubits) {
    if (n_qubits <= 10) {
        return 2000;
    }
    if (n_qubits <= 12) {
        return 500;
    }
    return 100;
}

void ExperimentConfig::validate() const {
    if (n_qubits_list.empty()) {
        throw ConfigError("n_qubits list is empty");
    }
    std::set<int> seen;
    for (int n : n_qubits_list) {
        if (n < 1) {
            throw ConfigError("n_qubits must be >= 1, got " + std::to_string(n));
        }
        if (n > kMaxQubits) {
            throw CapabilityError("n_qubits = " + std::to_string(n) + " exceeds the N <= " +
                                  std::to_string(kMaxQubits) + " capability limit");
        }
        if (!seen.insert(n).second) {
            throw ConfigError("duplicate n_qubits " + std::to_string(n));
        }
        if (cut && (*cut < 1 || *cut > n - 1)) {
            throw ConfigError("cut " + std::to_string(*cut) + " invalid for N=" + std::to_string(n));
        }
    }
    if (mode == SamplingMode::kBrickwall) {
        if (depth_list.empty()) {
            throw ConfigError("brickwall mode needs a depth list");
        }
        for (int d : depth_list) {
            if (d < 0) {
                throw ConfigError("depth must be >= 0, got " + std::to_string(d));
            }
        }
    }
    if (samples_per_point && *samples_per_point < 1) {
        throw ConfigError("samples must be >= 1");
    }
    if (workers < 1) {
        throw ConfigError("workers must be >= 1");
    }
}

int ExperimentConfig::samples_for(int n_qubits) const { return samples_per_point.value_or(default_samples(n_qubits)); }

int ExperimentConfig::cut_for(int n_qubits) const { return cut.value_or(n_qubits / 2); }

std::string ExperimentConfig::id() const {
    if (!experiment_id.empty()) {
        return experiment_id;
    }
    return to_string(mode) + "-seed" + std::to_string(seed);
}

uint64_t point_id(SamplingMode mode, int n_qubits, int depth) {
    const uint64_t d = mode == SamplingMode::kHaar ? 0 : static_cast<uint64_t>(depth) + 1;
    return (static_cast<uint64_t>(n_qubits) << 32) | d;
}

std::vector<SampleRecord> sample_point(const ExperimentConfig &config, SamplingMode mode, int n_qubits, int depth,
                                       int samples) {
    const uint64_t pid = point_id(mode, n_qubits, depth);
    const int cut_n_a = config.cut_for(n_qubits);
    const std::string exp_id = config.id();
    std::vector<SampleRecord> out(static_cast<size_t>(samples));
    parallel_for(samples, config.workers, [&](int i) {
        RngStream rng = rng_stream_for(config.seed, pid, static_cast<uint64_t>(i));
        const StateVector state = mode == SamplingMode::kHaar
                                      ? sample_haar_state(n_qubits, rng)
                                      : sample_brickwall_state(BrickwallSpec{n_qubits, depth}, rng);
        SampleRecord &r = out[static_cast<size_t>(i)];
        r.experiment_id = exp_id;
        r.mode = mode;
        r.n_qubits = n_qubits;
        r.depth = mode == SamplingMode::kHaar ? -1 : depth;
        r.sample_index = i;
        r.m2 = sre_fast(state).m2;
        // A single qubit has no bipartition.
        r.s = n_qubits == 1 ? 0.0 : entanglement_entropy(state, CutSpec{cut_n_a}).s;
        check_bounds(r, cut_n_a);
    });
    return out;
}

PointSummary summarize_point(std::span<const SampleRecord> records, int cut_n_a) {
    if (records.empty()) {
        throw DataError("cannot summarize an empty point");
    }
    PointSummary p;
    p.n_qubits = records.front().n_qubits;
    p.depth = records.front().depth;
    p.cut_n_a = cut_n_a;
    for (const auto &r : records) {
        check_bounds(r, cut_n_a);
        p.acc.update(r.m2, r.s);
    }
    const int n = p.n_qubits;
    const double s_hi = std::max(n / 2, 1);
    p.m2_hist = Histogram1D(0.0, max_magic(n), kDefaultBins);
    p.s_hist = Histogram1D(0.0, s_hi, kDefaultBins);

    // Joint ranges: mean +- 5 sigma per axis, falling back to the marginal range.
    auto window = [&](double mean, double var, double lo, double hi) {
        const double sigma = p.acc.count() > 1 ? std::sqrt(std::max(var, 0.0)) : 0.0;
        if (!(sigma > 0)) {
            return std::pair{lo, hi};
        }
        return std::pair{mean - 5 * sigma, mean + 5 * sigma};
    };
    const double vx = p.acc.count() > 1 ? p.acc.variance() : 0.0;
    const double vy = p.acc.count() > 1 ? p.acc.variance_y() : 0.0;
    const auto [xl, xh] = window(p.acc.mean(), vx, 0.0, max_magic(n));
    const auto [yl, yh] = window(p.acc.mean_y(), vy, 0.0, s_hi);
    p.joint = Histogram2D(xl, xh, kDefaultBins, yl, yh, kDefaultBins);
    for (const auto &r : records) {
        p.m2_hist.update(r.m2);
        p.s_hist.update(r.s);
        p.joint.update(r.m2, r.s);
    }
    return p;
}

CampaignResult compute_distribution(const ExperimentConfig &config) {
    config.validate();
    CampaignResult result;
    result.kind = "distribution";
    result.config = config;
    for (int n : config.n_qubits_list) {
        if (config.mode == SamplingMode::kHaar) {
            append(result.records, sample_point(config, SamplingMode::kHaar, n, -1, config.samples_for(n)));
        } else {
            for (int d : config.depth_list) {
                append(result.records, sample_point(config, SamplingMode::kBrickwall, n, d, config.samples_for(n)));
            }
        }
    }
    result.points = summarize_records(config, result.records);
    return result;
}

CampaignResult compute_brickwall_sweep(const ExperimentConfig &config) {
    config.validate();
    if (config.mode != SamplingMode::kBrickwall) {
        throw ConfigError("convergence sweep needs mode=brickwall");
    }
    CampaignResult result;
    result.kind = "convergence";
    result.config = config;
    for (int n : config.n_qubits_list) {
        const int samples = config.samples_for(n);
        auto reference = sample_point(config, SamplingMode::kHaar, n, -1, samples);
        std::vector<double> ref_m2;
        for (const auto &r : reference) {
            ref_m2.push_back(r.m2);
        }
        std::sort(ref_m2.begin(), ref_m2.end());
        append(result.records, std::move(reference));
        for (int d : config.depth_list) {
            auto block = sample_point(config, SamplingMode::kBrickwall, n, d, samples);
            std::vector<double> m2;
            for (const auto &r : block) {
                m2.push_back(r.m2);
            }
            std::sort(m2.begin(), m2.end());
            result.convergence.push_back({n, d, ks_distance(m2, ref_m2)});
            append(result.records, std::move(block));
        }
    }
    result.points = summarize_records(config, result.records);
    return result;
}

CampaignResult compute_scaling(const ExperimentConfig &config) {
    if (config.mode != SamplingMode::kHaar) {
        throw ConfigError("scaling campaign needs mode=haar");
    }
    CampaignResult result = compute_distribution(config);
    result.kind = "scaling";
    std::vector<ScalingPoint> var_m2, var_s, cov, geo;
    for (const auto &p : result.points) {
        if (p.acc.count() < 2) {
            throw DataError("scaling needs at least 2 samples per point");
        }
        ScalingRow row;
        row.n_qubits = p.n_qubits;
        row.var_m2 = p.acc.variance();
        row.var_s = p.acc.variance_y();
        row.cov = p.acc.covariance();
        row.pearson_r = (p.acc.x().m2 > 0 && p.acc.y().m2 > 0) ? correlation(p.acc) : 0.0;
        result.scaling.push_back(row);
        if (row.var_m2 > 0 && row.var_s > 0 && row.cov != 0) {
            var_m2.push_back({row.n_qubits, row.var_m2});
            var_s.push_back({row.n_qubits, row.var_s});
            cov.push_back({row.n_qubits, std::abs(row.cov)});
            geo.push_back({row.n_qubits, std::sqrt(row.var_m2 * row.var_s)});
        }
    }
    if (var_m2.size() < 4) {
        result.warnings.push_back("too few points for a stable fit (" + std::to_string(var_m2.size()) +
                                  " usable values of N, want >= 4)");
    }
    if (var_m2.size() >= 3) {
        result.fits.var_m2 = fit_log2_slope(var_m2);
        result.fits.var_s = fit_log2_slope(var_s);
        result.fits.abs_cov = fit_log2_slope(cov);
        result.fits.geometric_mean = fit_log2_slope(geo);
    }
    return result;
}

CampaignResult run_distribution(const ExperimentConfig &config) {
    CampaignResult r = compute_distribution(config);
    write_outputs(r);
    return r;
}

CampaignResult run_brickwall_sweep(const ExperimentConfig &config) {
    CampaignResult r = compute_brickwall_sweep(config);
    write_outputs(r);
    return r;
}

CampaignResult run_scaling(const ExperimentConfig &config) {
    CampaignResult r = compute_scaling(config);
    write_outputs(r);
    return r;
}

void write_records_csv(std::ostream &out, std::span<const SampleRecord> records) {
    out << "schema_version,experiment_id,mode,n_qubits,depth,sample_index,m2_bits,s_bits\n";
    for (const auto &r : records) {
        out << kSchemaVersion << ',' << r.experiment_id << ',' << to_string(r.mode) << ',' << r.n_qubits << ','
            << r.depth << ',' << r.sample_index << ',' << format_double(r.m2) << ',' << format_double(r.s) << '\n';
    }
}

std::vector<SampleRecord> read_records_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) ||
        line != "schema_version,experiment_id,mode,n_qubits,depth,sample_index,m2_bits,s_bits") {
        throw DataError("records CSV header mismatch");
    }
    std::vector<SampleRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) {
            fields.push_back(f);
        }
        if (fields.size() != 8) {
            throw DataError("records CSV row has " + std::to_string(fields.size()) + " fields");
        }
        if (parse_int(fields[0]) != kSchemaVersion) {
            throw DataError("unsupported records schema_version " + fields[0]);
        }
        SampleRecord r;
        r.experiment_id = fields[1];
        r.mode = parse_mode(fields[2]);
        r.n_qubits = parse_int(fields[3]);
        r.depth = parse_int(fields[4]);
        r.sample_index = parse_int(fields[5]);
        r.m2 = parse_double(fields[6]);
        r.s = parse_double(fields[7]);
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::json summary_json(const CampaignResult &result) {
    const ExperimentConfig &cfg = result.config;
    nlohmann::json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = result.kind;
    j["experiment_id"] = cfg.id();
    j["mode"] = to_string(cfg.mode);
    j["seed"] = cfg.seed;
    nlohmann::json points = nlohmann::json::array();
    for (const auto &p : result.points) {
        nlohmann::json pj;
        pj["n_qubits"] = p.n_qubits;
        pj["depth"] = p.depth;
        pj["cut_n_a"] = p.cut_n_a;
        pj["count"] = p.acc.count();
        if (p.acc.count() >= 4) {
            pj["m2"] = moments_json(cumulants(p.acc));
            pj["s"] = moments_json(cumulants_y(p.acc));
        } else {
            pj["m2"] = {{"mean", p.acc.mean()}};
            pj["s"] = {{"mean", p.acc.mean_y()}};
        }
        const bool has_var = p.acc.count() >= 2;
        pj["cov"] = optional_json(has_var ? p.acc.covariance() : 0.0, has_var);
        const bool has_r = has_var && p.acc.x().m2 > 0 && p.acc.y().m2 > 0;
        pj["pearson_r"] = optional_json(has_r ? correlation(p.acc) : 0.0, has_r);
        pj["histograms"] = {{"m2", to_json(p.m2_hist)}, {"s", to_json(p.s_hist)}, {"joint", to_json(p.joint)}};
        points.push_back(std::move(pj));
    }
    j["points"] = std::move(points);
    if (result.kind == "convergence") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &c : result.convergence) {
            rows.push_back({{"n_qubits", c.n_qubits}, {"depth", c.depth}, {"ks", c.ks}});
        }
        j["convergence"] = std::move(rows);
    }
    if (result.kind == "scaling") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto &s : result.scaling) {
            rows.push_back({{"n_qubits", s.n_qubits},
                            {"var_m2", s.var_m2},
                            {"var_s", s.var_s},
                            {"cov", s.cov},
                            {"pearson_r", s.pearson_r}});
        }
        nlohmann::json fits = nlohmann::json::object();
        auto put = [&](const char *key, const std::optional<LogSlopeFit> &f) {
            fits[key] = f ? to_json(*f) : nlohmann::json(nullptr);
        };
        put("var_m2", result.fits.var_m2);
        put("var_s", result.fits.var_s);
        put("abs_cov", result.fits.abs_cov);
        put("geometric_mean", result.fits.geometric_mean);
        j["scaling"] = {{"table", std::move(rows)}, {"fits", std::move(fits)}, {"warnings", result.warnings}};
    }
    return j;
}

void write_outputs(const CampaignResult &result) {
    std::ostringstream csv;
    write_records_csv(csv, result.records);
    write_file(result.config.records_path, csv.str());
    write_file(result.config.summary_path, summary_json(result).dump(2) + "\n");
}

}  // namespace haarmagic
