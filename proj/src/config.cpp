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

#include "risnoma/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "risnoma/errors.hpp"

namespace risnoma {

using nlohmann::json;

std::string_view to_string(Strategy s) noexcept {
    switch (s) {
        case Strategy::proposed: return "proposed";
        case Strategy::sum_rate: return "sum_rate";
        case Strategy::random: return "random";
    }
    return "?";
}

std::string_view to_string(SweepVariable v) noexcept {
    switch (v) {
        case SweepVariable::n_ues: return "K";
        case SweepVariable::spread_db: return "spread_db";
        case SweepVariable::n_ris_elements: return "n_ris_elements";
    }
    return "?";
}

std::string_view to_string(CodebookKind c) noexcept {
    return c == CodebookKind::grassmannian ? "grassmannian" : "oma";
}

std::string_view to_string(IcMode m) noexcept {
    return m == IcMode::genie ? "genie" : "realistic";
}

namespace {

bool is_count(double v) { return v >= 1.0 && std::floor(v) == v && v < 1e6; }

template <typename E, std::size_t N>
E enum_from(const json& j, const char* key, const E (&values)[N]) {
    if (!j.is_string()) throw ConfigError(std::string(key) + ": expected a string");
    const std::string s = j.get<std::string>();
    for (const E v : values)
        if (to_string(v) == s) return v;
    throw ConfigError(std::string(key) + ": unknown value '" + s + "'");
}

void reject_unknown(const json& obj, const char* where, std::initializer_list<const char*> known) {
    if (!obj.is_object()) throw ConfigError(std::string(where) + ": expected an object");
    const std::set<std::string> k(known.begin(), known.end());
    for (const auto& [key, _] : obj.items())
        if (!k.count(key)) throw ConfigError(std::string(where) + ": unknown key '" + key + "'");
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string(key) + ": " + e.what());
    }
}

constexpr Strategy kStrategies[] = {Strategy::proposed, Strategy::sum_rate, Strategy::random};
constexpr SweepVariable kSweeps[] = {SweepVariable::n_ues, SweepVariable::spread_db,
                                     SweepVariable::n_ris_elements};
constexpr CodebookKind kCodebooks[] = {CodebookKind::grassmannian, CodebookKind::oma};
constexpr IcMode kModes[] = {IcMode::genie, IcMode::realistic};

}  // namespace

void ExperimentConfig::validate() const {
    channel.validate();
    if (n_drops < 1) throw ConfigError("n_drops must be >= 1");
    if (sweep_values.empty()) throw ConfigError("sweep.values must be non-empty");
    if (strategies.empty()) throw ConfigError("strategies must be non-empty");
    if (codebook_length != channel.spreading_length)
        throw ConfigError("codebook.length must equal channel.spreading_length");
    if (codebook_kind == CodebookKind::grassmannian && codebook_size < codebook_length)
        throw ConfigError("codebook.size must be >= codebook.length");
    if (codebook_design_iters < 1) throw ConfigError("codebook.design_iters must be >= 1");
    if (!std::isfinite(threshold_db)) throw ConfigError("threshold_db must be finite");
    if (randomization && randomization_samples < 1)
        throw ConfigError("randomization.n_samples must be >= 1");
    if (sdp.max_iter < 1 || !(sdp.tol > 0.0)) throw ConfigError("sdp: max_iter >= 1 and tol > 0 required");
    for (const double v : sweep_values) {
        if (!std::isfinite(v)) throw ConfigError("sweep value must be finite");
        if (sweep_variable != SweepVariable::spread_db && !is_count(v))
            throw ConfigError("sweep value for " + std::string(to_string(sweep_variable)) +
                              " must be a positive integer");
        if (sweep_variable == SweepVariable::spread_db && v < 0.0)
            throw ConfigError("spread_db sweep values must be >= 0");
    }
}

ChannelConfig ExperimentConfig::channel_at(double value) const {
    ChannelConfig c = channel;
    switch (sweep_variable) {
        case SweepVariable::n_ues: c.n_ues = static_cast<std::size_t>(value); break;
        case SweepVariable::spread_db: c.ue_pathloss_spread_db = value; break;
        case SweepVariable::n_ris_elements: c.n_ris_elements = static_cast<std::size_t>(value); break;
    }
    return c;
}

ExperimentConfig parse_experiment_config(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(root, "config",
                   {"label", "channel", "codebook", "threshold_db", "strategies", "sweep", "n_drops",
                    "master_seed", "ic_mode", "randomization", "sdp"});
    ExperimentConfig c;
    read(root, "label", c.label);
    if (root.contains("channel")) {
        const json& ch = root["channel"];
        reject_unknown(ch, "channel",
                       {"n_bs_antennas", "n_ris_elements", "n_ues", "spreading_length",
                        "bs_ris_pathloss_db", "ue_pathloss_mean_db", "ue_pathloss_spread_db",
                        "tx_power_dbm", "noise_power_dbm"});
        read(ch, "n_bs_antennas", c.channel.n_bs_antennas);
        read(ch, "n_ris_elements", c.channel.n_ris_elements);
        read(ch, "n_ues", c.channel.n_ues);
        read(ch, "spreading_length", c.channel.spreading_length);
        read(ch, "bs_ris_pathloss_db", c.channel.bs_ris_pathloss_db);
        read(ch, "ue_pathloss_mean_db", c.channel.ue_pathloss_mean_db);
        read(ch, "ue_pathloss_spread_db", c.channel.ue_pathloss_spread_db);
        read(ch, "tx_power_dbm", c.channel.tx_power_dbm);
        read(ch, "noise_power_dbm", c.channel.noise_power_dbm);
    }
    c.codebook_length = c.channel.spreading_length;
    if (root.contains("codebook")) {
        const json& cb = root["codebook"];
        reject_unknown(cb, "codebook", {"kind", "length", "size", "design_iters", "csv"});
        if (cb.contains("kind")) c.codebook_kind = enum_from(cb["kind"], "codebook.kind", kCodebooks);
        read(cb, "length", c.codebook_length);
        read(cb, "size", c.codebook_size);
        read(cb, "design_iters", c.codebook_design_iters);
        if (cb.contains("csv")) {
            std::string p;
            read(cb, "csv", p);
            c.codebook_csv = p;
        }
    }
    if (c.codebook_kind == CodebookKind::oma) c.codebook_size = c.codebook_length;
    read(root, "threshold_db", c.threshold_db);
    if (root.contains("strategies")) {
        if (!root["strategies"].is_array()) throw ConfigError("strategies: expected an array");
        c.strategies.clear();
        for (const auto& s : root["strategies"]) c.strategies.push_back(enum_from(s, "strategies", kStrategies));
    }
    if (root.contains("sweep")) {
        const json& sw = root["sweep"];
        reject_unknown(sw, "sweep", {"variable", "values"});
        if (sw.contains("variable")) c.sweep_variable = enum_from(sw["variable"], "sweep.variable", kSweeps);
        read(sw, "values", c.sweep_values);
    }
    read(root, "n_drops", c.n_drops);
    read(root, "master_seed", c.master_seed);
    if (root.contains("ic_mode")) c.ic_mode = enum_from(root["ic_mode"], "ic_mode", kModes);
    if (root.contains("randomization")) {
        const json& r = root["randomization"];
        reject_unknown(r, "randomization", {"enabled", "n_samples"});
        read(r, "enabled", c.randomization);
        read(r, "n_samples", c.randomization_samples);
    }
    if (root.contains("sdp")) {
        const json& s = root["sdp"];
        reject_unknown(s, "sdp", {"max_iter", "tol", "step"});
        read(s, "max_iter", c.sdp.max_iter);
        read(s, "tol", c.sdp.tol);
        read(s, "step", c.sdp.step);
    }
    c.validate();
    return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

std::string to_json(const ExperimentConfig& c) {
    json j;
    j["label"] = c.label;
    j["channel"] = {{"n_bs_antennas", c.channel.n_bs_antennas},
                    {"n_ris_elements", c.channel.n_ris_elements},
                    {"n_ues", c.channel.n_ues},
                    {"spreading_length", c.channel.spreading_length},
                    {"bs_ris_pathloss_db", c.channel.bs_ris_pathloss_db},
                    {"ue_pathloss_mean_db", c.channel.ue_pathloss_mean_db},
                    {"ue_pathloss_spread_db", c.channel.ue_pathloss_spread_db},
                    {"tx_power_dbm", c.channel.tx_power_dbm},
                    {"noise_power_dbm", c.channel.noise_power_dbm}};
    j["codebook"] = {{"kind", to_string(c.codebook_kind)},
                     {"length", c.codebook_length},
                     {"size", c.codebook_size},
                     {"design_iters", c.codebook_design_iters}};
    if (c.codebook_csv) j["codebook"]["csv"] = c.codebook_csv->string();
    j["threshold_db"] = c.threshold_db;
    j["strategies"] = json::array();
    for (const Strategy s : c.strategies) j["strategies"].push_back(to_string(s));
    j["sweep"] = {{"variable", to_string(c.sweep_variable)}, {"values", c.sweep_values}};
    j["n_drops"] = c.n_drops;
    j["master_seed"] = c.master_seed;
    j["ic_mode"] = to_string(c.ic_mode);
    j["randomization"] = {{"enabled", c.randomization}, {"n_samples", c.randomization_samples}};
    j["sdp"] = {{"max_iter", c.sdp.max_iter}, {"tol", c.sdp.tol}, {"step", c.sdp.step}};
    return j.dump(2);
}

std::vector<ExperimentConfig> preset(std::string_view name) {
    ExperimentConfig base;
    base.channel = ChannelConfig{};  // 32 x 32, L = 4, P = 30 dBm, -65 dB, -110 dBm
    base.codebook_kind = CodebookKind::grassmannian;
    base.codebook_length = 4;
    base.codebook_size = 16;
    base.n_drops = 500;

    std::vector<ExperimentConfig> out;
    if (name == "fig1") {
        base.channel.ue_pathloss_spread_db = 3.0;
        base.sweep_variable = SweepVariable::n_ues;
        base.sweep_values.clear();
        for (int k = 2; k <= 16; ++k) base.sweep_values.push_back(k);
        for (const double eps : {1.0, 4.0, 9.0}) {
            ExperimentConfig c = base;
            c.threshold_db = eps;
            c.label = "eps" + std::to_string(static_cast<int>(eps)) + "db";
            out.push_back(c);
        }
    } else if (name == "fig2") {
        base.channel.n_ues = 12;
        base.threshold_db = 4.0;
        base.sweep_variable = SweepVariable::spread_db;
        base.sweep_values = {0, 1, 2, 3, 4, 5, 6};
        for (const CodebookKind kind : {CodebookKind::grassmannian, CodebookKind::oma}) {
            ExperimentConfig c = base;
            c.codebook_kind = kind;
            c.codebook_size = kind == CodebookKind::oma ? 4 : 16;
            c.label = kind == CodebookKind::oma ? "oma" : "noma";
            out.push_back(c);
        }
    } else if (name == "fig3") {
        base.channel.n_ues = 12;
        base.channel.ue_pathloss_spread_db = 0.0;
        base.threshold_db = 3.0;
        base.sweep_variable = SweepVariable::n_ris_elements;
        base.sweep_values = {4, 8, 16, 32, 64, 128};
        for (const double p : {-5.0, 30.0}) {
            ExperimentConfig c = base;
            c.channel.tx_power_dbm = p;
            c.label = p < 0 ? "p-5dbm" : "p30dbm";
            out.push_back(c);
        }
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "'");
    }
    return out;
}

}  // namespace risnoma
