// SPDX-License-Identifier: Apache-2.0
//
// risnoma - link-level simulation of RIS-assisted code-domain NOMA uplinks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// risnoma: Monte Carlo front end.
//
//   risnoma fig1|fig2|fig3 [--out data.csv]   preset sweeps, one CSV per series
//   risnoma run --config exp.json [--out data.csv]
//
// Exit codes: 0 success, 2 configuration error, 3 more than 1% of drops
// failed numerically, 1 anything else.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "risnoma/errors.hpp"
#include "risnoma/harness.hpp"
#include "risnoma/kernels.hpp"

namespace fs = std::filesystem;
using namespace risnoma;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerics = 3;
constexpr double kMaxFailureRate = 0.01;

struct Options {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> drops;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    bool verbose = false;
};

fs::path series_path(const fs::path& out, const std::string& series) {
    return out.parent_path() / (out.stem().string() + "_" + series + out.extension().string());
}

int run_all(std::vector<ExperimentConfig> configs, const Options& opt, const std::string& default_out,
            bool split) {
    const fs::path out = opt.out.empty() ? fs::path(default_out) : fs::path(opt.out);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    int status = 0;
    for (ExperimentConfig& cfg : configs) {
        if (opt.seed) cfg.master_seed = *opt.seed;
        if (opt.drops) cfg.n_drops = *opt.drops;
        cfg.validate();

        RunOptions ro;
        ro.threads = opt.threads;
        ro.keep_drops = opt.verbose;
        if (opt.verbose) {
            std::cerr << "[" << cfg.label << "] " << cfg.sweep_values.size() << " points x "
                      << cfg.n_drops << " drops, kernels=" << kernels::isa_name(kernels::active_isa())
                      << "\n";
            ro.progress = [](std::size_t done, std::size_t total) {
                if (done % 50 == 0 || done == total)
                    std::cerr << "  " << done << "/" << total << "\r" << std::flush;
            };
        }
        const MonteCarloSummary summary = run_experiment(cfg, ro);
        const fs::path path = split ? series_path(out, cfg.label) : out;
        emit_csv(summary, path);
        std::cerr << (opt.verbose ? "\n" : "") << "wrote " << path.string() << " (" << summary.n_failed_drops
                  << "/" << summary.n_total_drops << " drops failed)\n";
        if (opt.verbose) {
            fs::path dpath = path;
            dpath.replace_filename(path.stem().string() + "_drops" + path.extension().string());
            std::ofstream d(dpath, std::ios::binary);
            if (!d) throw IoError("cannot open " + dpath.string());
            write_drop_csv(summary, d);
            std::cerr << "wrote " << dpath.string() << "\n";
        }
        if (summary.failure_rate() > kMaxFailureRate) {
            std::cerr << "error: drop failure rate " << summary.failure_rate() << " exceeds "
                      << kMaxFailureRate << "\n";
            status = kExitNumerics;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted code-domain NOMA uplink Monte Carlo simulator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", opt.out, "Output CSV path (presets append _<series>)");
        sub->add_option("--seed", opt.seed, "Master seed override");
        sub->add_option("--drops", opt.drops, "Drops per sweep point override")->check(CLI::PositiveNumber);
        sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--verbose", opt.verbose, "Progress on stderr and per-drop diagnostics CSV");
    };
    CLI::App* fig1 = app.add_subcommand("fig1", "Detected UEs vs K at eps = 1, 4, 9 dB");
    CLI::App* fig2 = app.add_subcommand("fig2", "Detected UEs vs pathloss spread, NOMA vs OMA");
    CLI::App* fig3 = app.add_subcommand("fig3", "Detected UEs vs RIS size at P = -5, 30 dBm");
    CLI::App* run = app.add_subcommand("run", "Experiment from a JSON config file");
    for (CLI::App* sub : {fig1, fig2, fig3, run}) add_common(sub);
    run->add_option("--config", opt.config_path, "JSON experiment config")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        for (CLI::App* sub : {fig1, fig2, fig3}) {
            if (sub->parsed()) return run_all(preset(sub->get_name()), opt, sub->get_name() + ".csv", true);
        }
        return run_all({load_experiment_config(opt.config_path)}, opt, "run.csv", false);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
