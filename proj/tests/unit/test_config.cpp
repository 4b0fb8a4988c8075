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

#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "risnoma/config.hpp"
#include "risnoma/errors.hpp"

using namespace risnoma;

TEST_SUITE("config") {

TEST_CASE("empty object gives the defaults") {
    const ExperimentConfig c = parse_experiment_config("{}");
    CHECK(c.channel.n_ris_elements == 32);
    CHECK(c.channel.n_bs_antennas == 32);
    CHECK(c.channel.spreading_length == 4);
    CHECK(c.codebook_size == 16);
    CHECK(c.threshold_db == 4.0);
    CHECK(c.n_drops == 500);
    CHECK(c.ic_mode == IcMode::realistic);
    CHECK_FALSE(c.randomization);
    CHECK(c.sdp.max_iter == 5000);
    CHECK(c.sdp.tol == 1e-6);
    CHECK(c.strategies.size() == 3);
}

TEST_CASE("full config parses") {
    const ExperimentConfig c = parse_experiment_config(R"({
        "label": "demo",
        "channel": {"n_ris_elements": 16, "n_ues": 6, "ue_pathloss_spread_db": 2.5, "tx_power_dbm": -5},
        "codebook": {"kind": "oma"},
        "threshold_db": 9,
        "strategies": ["random", "proposed"],
        "sweep": {"variable": "n_ris_elements", "values": [4, 8]},
        "n_drops": 7,
        "master_seed": 12345678901234,
        "ic_mode": "genie",
        "randomization": {"enabled": true, "n_samples": 8},
        "sdp": {"max_iter": 300, "tol": 1e-5}
    })");
    CHECK(c.label == "demo");
    CHECK(c.channel.n_ris_elements == 16);
    CHECK(c.channel.tx_power_dbm == -5.0);
    CHECK(c.codebook_kind == CodebookKind::oma);
    CHECK(c.codebook_size == 4);
    CHECK(c.strategies == std::vector<Strategy>{Strategy::random, Strategy::proposed});
    CHECK(c.sweep_variable == SweepVariable::n_ris_elements);
    CHECK(c.master_seed == 12345678901234ULL);
    CHECK(c.ic_mode == IcMode::genie);
    CHECK(c.randomization);
    CHECK(c.randomization_samples == 8);
    CHECK(c.sdp.max_iter == 300);
    CHECK(c.channel_at(8).n_ris_elements == 8);
}

TEST_CASE("invalid configs are rejected") {
    for (const char* bad : {
             "not json",
             "[]",
             R"({"unknown": 1})",
             R"({"channel": {"n_ues": 0}})",
             R"({"channel": {"bogus": 0}})",
             R"({"n_drops": 0})",
             R"({"sweep": {"values": []}})",
             R"({"sweep": {"variable": "K", "values": [2.5]}})",
             R"({"sweep": {"variable": "spread_db", "values": [-1]}})",
             R"({"sweep": {"variable": "power"}})",
             R"({"strategies": []})",
             R"({"strategies": ["greedy"]})",
             R"({"codebook": {"kind": "sparse"}})",
             R"({"codebook": {"length": 3}})",
             R"({"codebook": {"size": 2}})",
             R"({"ic_mode": "oracle"})",
             R"({"threshold_db": "high"})",
             R"({"randomization": {"enabled": true, "n_samples": 0}})",
             R"({"sdp": {"tol": 0}})",
         }) {
        CAPTURE(bad);
        CHECK_THROWS_AS(parse_experiment_config(bad), ConfigError);
    }
}

TEST_CASE("to_json round trips") {
    ExperimentConfig c = preset("fig2").at(1);
    c.codebook_csv = "cb.csv";
    const ExperimentConfig back = parse_experiment_config(to_json(c));
    CHECK(to_json(back) == to_json(c));
    CHECK(back.codebook_kind == CodebookKind::oma);
    CHECK(back.sweep_values == c.sweep_values);
}

TEST_CASE("load from file") {
    const auto path = std::filesystem::temp_directory_path() / "risnoma_config_test.json";
    {
        std::ofstream f(path);
        f << R"({"n_drops": 3, "threshold_db": 1})";
    }
    const ExperimentConfig c = load_experiment_config(path);
    CHECK(c.n_drops == 3);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_experiment_config(path), ConfigError);
}

TEST_CASE("presets carry the reference parameter sets") {
    const auto f1 = preset("fig1");
    REQUIRE(f1.size() == 3);
    CHECK(f1[0].threshold_db == 1.0);
    CHECK(f1[1].threshold_db == 4.0);
    CHECK(f1[2].threshold_db == 9.0);
    for (const auto& c : f1) {
        CHECK(c.channel.ue_pathloss_spread_db == 3.0);
        CHECK(c.sweep_variable == SweepVariable::n_ues);
        CHECK(c.sweep_values.front() == 2.0);
        CHECK(c.sweep_values.back() == 16.0);
        CHECK(c.sweep_values.size() == 15);
        CHECK(c.codebook_size == 16);
        CHECK(c.channel.tx_power_dbm == 30.0);
        CHECK(c.channel.noise_power_dbm == -110.0);
        CHECK(c.channel.bs_ris_pathloss_db == -65.0);
        CHECK(c.channel.ue_pathloss_mean_db == -65.0);
    }
    const auto f2 = preset("fig2");
    REQUIRE(f2.size() == 2);
    CHECK(f2[0].codebook_kind == CodebookKind::grassmannian);
    CHECK(f2[1].codebook_kind == CodebookKind::oma);
    CHECK(f2[1].codebook_size == 4);
    for (const auto& c : f2) {
        CHECK(c.channel.n_ues == 12);
        CHECK(c.threshold_db == 4.0);
        CHECK(c.sweep_values == std::vector<double>{0, 1, 2, 3, 4, 5, 6});
    }
    const auto f3 = preset("fig3");
    REQUIRE(f3.size() == 2);
    CHECK(f3[0].channel.tx_power_dbm == -5.0);
    CHECK(f3[1].channel.tx_power_dbm == 30.0);
    for (const auto& c : f3) {
        CHECK(c.threshold_db == 3.0);
        CHECK(c.channel.ue_pathloss_spread_db == 0.0);
        CHECK(c.sweep_variable == SweepVariable::n_ris_elements);
        CHECK(c.sweep_values == std::vector<double>{4, 8, 16, 32, 64, 128});
    }
    CHECK_THROWS_AS(preset("fig4"), ConfigError);
}

}  // TEST_SUITE
