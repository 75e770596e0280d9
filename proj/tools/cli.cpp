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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "haarmagic/errors.hpp"
#include "haarmagic/runner.hpp"
#include "haarmagic/verify.hpp"

namespace haarmagic::cli {

namespace {

const std::vector<std::string> kConfigKeys = {"mode", "n", "depth", "samples", "seed", "workers",
                                              "out", "cut", "experiment_id", "trials"};

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string &key, const std::string &text) {
    T v{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw ConfigError("invalid value '" + text + "' for " + key);
    }
    return v;
}

// Flat "key = value" file; '#' starts a comment.
std::map<std::string, std::string> read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file " + path);
    }
    std::map<std::string, std::string> values;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.starts_with("--")) {
            key = key.substr(2);
        }
        if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end()) {
            throw ConfigError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        values[key] = trim(line.substr(eq + 1));
    }
    return values;
}

// Options shared by the campaign subcommands. Strings keep "unset" distinguishable
// so file values only apply when the flag is absent.
struct CampaignFlags {
    std::string config_path;
    std::optional<std::string> mode, n, depth, samples, seed, workers, out, cut, experiment_id;
};

void add_campaign_flags(CLI::App *cmd, CampaignFlags &f, bool with_mode) {
    cmd->add_option("--config", f.config_path, "Flat key = value config file; flags override its values");
    if (with_mode) {
        cmd->add_option("--mode", f.mode, "Sampling mode: haar or brickwall");
    }
    cmd->add_option("--n", f.n, "Qubit counts, e.g. 6, 2,4,6 or 4..10");
    cmd->add_option("--depth", f.depth, "Brick-wall depths, e.g. 10 or 0..12");
    cmd->add_option("--samples", f.samples, "Samples per point (default 2000 for N<=10, 500 for N<=12)");
    cmd->add_option("--seed", f.seed, "64-bit master seed");
    cmd->add_option("--workers", f.workers, "Worker threads (results do not depend on this)");
    cmd->add_option("--out", f.out, "Output directory for records.csv and summary.json");
    cmd->add_option("--cut", f.cut, "Subsystem size n_a (default floor(N/2))");
    cmd->add_option("--experiment-id", f.experiment_id, "Identifier written into every record");
}

struct Resolved {
    ExperimentConfig config;
    std::map<std::string, std::string> values;
};

Resolved resolve(const CampaignFlags &f, SamplingMode default_mode, const std::string &default_n) {
    Resolved r;
    if (!f.config_path.empty()) {
        r.values = read_config_file(f.config_path);
    }
    auto apply = [&](const char *key, const std::optional<std::string> &flag) {
        if (flag) {
            r.values[key] = *flag;
        }
    };
    apply("mode", f.mode);
    apply("n", f.n);
    apply("depth", f.depth);
    apply("samples", f.samples);
    apply("seed", f.seed);
    apply("workers", f.workers);
    apply("out", f.out);
    apply("cut", f.cut);
    apply("experiment_id", f.experiment_id);

    ExperimentConfig &c = r.config;
    auto get = [&](const char *key) -> std::optional<std::string> {
        auto it = r.values.find(key);
        return it == r.values.end() ? std::nullopt : std::optional(it->second);
    };
    c.mode = get("mode") ? parse_mode(*get("mode")) : default_mode;
    const auto n_text = get("n").value_or(default_n);
    if (n_text.empty()) {
        throw ConfigError("--n is required");
    }
    c.n_qubits_list = parse_int_list(n_text);
    if (auto d = get("depth")) {
        c.depth_list = parse_int_list(*d);
    }
    if (auto s = get("samples")) {
        c.samples_per_point = parse_number<int>("--samples", *s);
    }
    if (auto s = get("seed")) {
        c.seed = parse_number<uint64_t>("--seed", *s);
    }
    c.workers = get("workers") ? parse_number<int>("--workers", *get("workers"))
                               : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (auto s = get("cut")) {
        c.cut = parse_number<int>("--cut", *s);
    }
    if (auto s = get("experiment_id")) {
        if (s->find_first_of(",\n") != std::string::npos) {
            throw ConfigError("--experiment-id must not contain commas or newlines");
        }
        c.experiment_id = *s;
    }
    const std::filesystem::path out_dir = get("out").value_or("haarmagic_out");
    c.records_path = out_dir / "records.csv";
    c.summary_path = out_dir / "summary.json";
    return r;
}

void print_points(std::ostream &out, const CampaignResult &result) {
    out << std::setprecision(6);
    for (const auto &p : result.points) {
        out << "N=" << p.n_qubits;
        if (p.depth >= 0) {
            out << " D=" << p.depth;
        }
        out << " count=" << p.acc.count() << " mean_m2=" << p.acc.mean() << " mean_s=" << p.acc.mean_y();
        if (p.acc.count() >= 2) {
            out << " var_m2=" << p.acc.variance() << " var_s=" << p.acc.variance_y();
            if (p.acc.x().m2 > 0 && p.acc.y().m2 > 0) {
                out << " r=" << correlation(p.acc);
            } else {
                out << " r=nan";
            }
        }
        out << '\n';
    }
}

int cmd_sample(const CampaignFlags &f, std::ostream &out) {
    const Resolved r = resolve(f, SamplingMode::kHaar, "");
    const CampaignResult result = run_distribution(r.config);
    print_points(out, result);
    out << "wrote " << r.config.records_path.string() << " and " << r.config.summary_path.string() << '\n';
    return kOk;
}

int cmd_convergence(const CampaignFlags &f, std::ostream &out) {
    Resolved r = resolve(f, SamplingMode::kBrickwall, "");
    r.config.mode = SamplingMode::kBrickwall;
    if (r.config.depth_list.empty()) {
        const int max_n = *std::max_element(r.config.n_qubits_list.begin(), r.config.n_qubits_list.end());
        r.config.depth_list = parse_int_list("0.." + std::to_string(2 * max_n + 2));
    }
    const CampaignResult result = run_brickwall_sweep(r.config);
    out << "N\tD\tKS\n" << std::setprecision(6);
    for (const auto &row : result.convergence) {
        out << row.n_qubits << '\t' << row.depth << '\t' << row.ks << '\n';
    }
    return kOk;
}

int cmd_scaling(const CampaignFlags &f, std::ostream &out, std::ostream &err) {
    Resolved r = resolve(f, SamplingMode::kHaar, "4..10");
    r.config.mode = SamplingMode::kHaar;
    const CampaignResult result = run_scaling(r.config);
    for (const auto &w : result.warnings) {
        err << "warning: " << w << '\n';
    }
    out << "N\tvar_m2\tvar_s\tcov\tr\n" << std::setprecision(6);
    for (const auto &row : result.scaling) {
        out << row.n_qubits << '\t' << row.var_m2 << '\t' << row.var_s << '\t' << row.cov << '\t' << row.pearson_r
            << '\n';
    }
    auto print_fit = [&](const char *label, const std::optional<LogSlopeFit> &fit) {
        if (fit) {
            out << "slope log2 " << label << " = " << fit->slope << " (max residual " << fit->max_residual << ")\n";
        }
    };
    print_fit("var(m2)", result.fits.var_m2);
    print_fit("var(s)", result.fits.var_s);
    print_fit("|cov(m2,s)|", result.fits.abs_cov);
    print_fit("sqrt(var(m2) var(s))", result.fits.geometric_mean);
    return kOk;
}

int cmd_verify(const VerifyOptions &opt, std::ostream &out) {
    const auto results = run_verification(opt);
    bool all = true;
    for (const auto &c : results) {
        out << (c.passed ? "PASS " : "FAIL ") << c.name << "  (" << c.detail << ")\n";
        all = all && c.passed;
    }
    out << (all ? "all invariants pass" : "invariant failures detected") << '\n';
    return all ? kOk : kInternalError;
}

}  // namespace

std::vector<int> parse_int_list(const std::string &text) {
    std::vector<int> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            throw ConfigError("empty entry in list '" + text + "'");
        }
        const auto dots = item.find("..");
        if (dots == std::string::npos) {
            out.push_back(parse_number<int>("list '" + text + "'", item));
            continue;
        }
        const int lo = parse_number<int>("range '" + item + "'", trim(item.substr(0, dots)));
        const int hi = parse_number<int>("range '" + item + "'", trim(item.substr(dots + 2)));
        if (hi < lo) {
            throw ConfigError("descending range '" + item + "'");
        }
        for (int v = lo; v <= hi; v++) {
            out.push_back(v);
        }
    }
    if (out.empty()) {
        throw ConfigError("empty list");
    }
    return out;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"haarmagic: magic and entanglement statistics of random pure states"};
    app.require_subcommand(1);

    CampaignFlags sample_flags, convergence_flags, scaling_flags;
    auto *sample = app.add_subcommand("sample", "Sample M2 and S distributions and write records + summary");
    add_campaign_flags(sample, sample_flags, true);
    auto *convergence = app.add_subcommand("convergence", "Brick-wall depth sweep: KS distance to Haar per depth");
    add_campaign_flags(convergence, convergence_flags, false);
    auto *scaling = app.add_subcommand("scaling", "Variance / covariance scaling with N and log2 slope fits");
    add_campaign_flags(scaling, scaling_flags, false);

    VerifyOptions verify_opts;
    std::string fault;
    auto *verify = app.add_subcommand("verify", "Run the invariant suite; exit 0 iff every check passes");
    verify->add_option("--trials", verify_opts.trials, "Random trials per invariant");
    verify->add_option("--seed", verify_opts.seed, "Seed for the suite");
    verify->add_option("--workers", verify_opts.workers, "Workers for the scheduling check");
    verify->add_option("--inject-fault", fault, "Deliberate defect for harness testing")
        ->check(CLI::IsMember({"skip-qr-phase"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        if (sample->parsed()) {
            return cmd_sample(sample_flags, out);
        }
        if (convergence->parsed()) {
            return cmd_convergence(convergence_flags, out);
        }
        if (scaling->parsed()) {
            return cmd_scaling(scaling_flags, out, err);
        }
        verify_opts.skip_qr_phase = fault == "skip-qr-phase";
        return cmd_verify(verify_opts, out);
    } catch (const ConfigError &e) {
        err << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const CapabilityError &e) {
        err << "capability error: " << e.what() << '\n';
        return kCapabilityError;
    } catch (const IoError &e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace haarmagic::cli
