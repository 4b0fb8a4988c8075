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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "risnoma/channel.hpp"
#include "risnoma/receiver.hpp"
#include "risnoma/risopt.hpp"

namespace risnoma {

enum class Strategy { proposed, sum_rate, random };
enum class SweepVariable { n_ues, spread_db, n_ris_elements };
enum class CodebookKind { grassmannian, oma };

std::string_view to_string(Strategy s) noexcept;
std::string_view to_string(SweepVariable v) noexcept;  // "K", "spread_db", "n_ris_elements"
std::string_view to_string(CodebookKind c) noexcept;
std::string_view to_string(IcMode m) noexcept;

struct ExperimentConfig {
    std::string label = "run";
    ChannelConfig channel;
    CodebookKind codebook_kind = CodebookKind::grassmannian;
    std::size_t codebook_length = 4;  // must equal channel.spreading_length
    std::size_t codebook_size = 16;   // ignored for OMA (size == length)
    int codebook_design_iters = 2000;
    std::optional<std::filesystem::path> codebook_csv;  // overrides design when set
    double threshold_db = 4.0;                          // common to all UEs
    std::vector<Strategy> strategies{Strategy::proposed, Strategy::sum_rate, Strategy::random};
    SweepVariable sweep_variable = SweepVariable::n_ues;
    std::vector<double> sweep_values{12};
    std::size_t n_drops = 500;
    std::uint64_t master_seed = 1;
    IcMode ic_mode = IcMode::realistic;
    bool randomization = false;
    std::size_t randomization_samples = 64;
    SdpParams sdp;

    // Throws ConfigError.
    void validate() const;
    // Channel parameters with the swept variable set to `value`.
    ChannelConfig channel_at(double value) const;
};

// JSON config file; missing keys keep their defaults, unknown keys are
// rejected. Throws ConfigError.
ExperimentConfig parse_experiment_config(std::string_view json_text);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
std::string to_json(const ExperimentConfig& config);

// Parameter sets of the three reference experiments. fig1 yields one config
// per threshold (1, 4, 9 dB), fig2 one per codebook (grassmannian, oma),
// fig3 one per transmit power (-5, 30 dBm).
std::vector<ExperimentConfig> preset(std::string_view name);

}  // namespace risnoma
