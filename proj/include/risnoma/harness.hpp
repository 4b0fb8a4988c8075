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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "risnoma/codebook.hpp"
#include "risnoma/config.hpp"
#include "risnoma/risopt.hpp"

namespace risnoma {

// Sub-stream labels below the per-drop seed.
inline constexpr std::uint64_t kChannelStream = 0;
inline constexpr std::uint64_t kRandomShiftStream = 1;
inline constexpr std::uint64_t kRandomizationStream = 2;

std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t sweep_index, std::size_t drop_index);

// Designs (or imports) the codebook of an experiment. One codebook serves
// every drop.
Codebook build_codebook(const ExperimentConfig& config);

struct StrategyResult {
    Strategy strategy = Strategy::random;
    std::size_t detected = 0;
    double sum_rate = 0.0;  // bit/s/Hz at the applied shifts
    // Proposed strategy only.
    std::optional<Provenance> provenance;
    int sdp_iterations = 0;
    double sdp_min_normalized_slack = 0.0;
    double sdp_min_eig = 0.0;
};

struct DropResult {
    std::size_t sweep_index = 0;
    std::size_t drop_index = 0;
    double sweep_value = 0.0;
    std::size_t n_ues = 0;
    bool failed = false;
    std::string error;  // set when failed
    std::vector<StrategyResult> strategies;  // config.strategies order
};

// One channel draw evaluated under every configured strategy. Numerical
// errors are caught and reported through `failed`.
DropResult run_drop(const ExperimentConfig& config, const Codebook& codebook,
                    std::size_t sweep_index, std::size_t drop_index);

struct PointSummary {
    double sweep_value = 0.0;
    Strategy strategy = Strategy::random;
    std::size_t n_ues = 0;
    double mean_detected = 0.0;
    double ci_halfwidth_95 = 0.0;
    std::size_t n_drops = 0;  // successful drops
    double sdp_solved_rate = 0.0;
    double mean_sum_rate = 0.0;

    double ci_lo() const noexcept { return mean_detected - ci_halfwidth_95; }
    double ci_hi() const noexcept { return mean_detected + ci_halfwidth_95; }
};

struct MonteCarloSummary {
    std::string label;
    SweepVariable sweep_variable = SweepVariable::n_ues;
    std::vector<PointSummary> points;  // sweep value major, strategy minor
    std::size_t n_total_drops = 0;
    std::size_t n_failed_drops = 0;
    std::vector<DropResult> drops;     // filled when RunOptions::keep_drops

    double failure_rate() const noexcept;
    const PointSummary& at(double sweep_value, Strategy strategy) const;
};

struct RunOptions {
    unsigned threads = 1;
    bool keep_drops = false;
    // Called after each finished drop with (done, total); may be invoked
    // from worker threads but never concurrently.
    std::function<void(std::size_t, std::size_t)> progress;
};

// Mean and 95% half-width (1.96 s / sqrt(n), zero for n == 1).
std::pair<double, double> mean_and_ci95(const std::vector<double>& samples);

MonteCarloSummary run_experiment(const ExperimentConfig& config, const RunOptions& options = {});
MonteCarloSummary run_experiment(const ExperimentConfig& config, const Codebook& codebook,
                                 const RunOptions& options = {});

void write_csv(const MonteCarloSummary& summary, std::ostream& out);
void emit_csv(const MonteCarloSummary& summary, const std::filesystem::path& path);

// Per-drop solver diagnostics (requires keep_drops).
void write_drop_csv(const MonteCarloSummary& summary, std::ostream& out);

}  // namespace risnoma
