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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "risnoma/errors.hpp"
#include "risnoma/harness.hpp"

using namespace risnoma;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.channel.n_ris_elements = 8;
    c.channel.ue_pathloss_spread_db = 3.0;
    c.codebook_design_iters = 200;
    c.sweep_variable = SweepVariable::n_ues;
    c.sweep_values = {2, 6};
    c.n_drops = 4;
    c.threshold_db = 4.0;
    c.master_seed = 77;
    return c;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

std::string csv_of(const MonteCarloSummary& s) {
    std::ostringstream os;
    write_csv(s, os);
    return os.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("sample mean and confidence half-width") {
    const auto [m1, h1] = mean_and_ci95({3.0});
    CHECK(m1 == 3.0);
    CHECK(h1 == 0.0);
    const std::vector<double> x{1, 2, 3, 4, 6};
    double mean = 3.2, ss = 0.0;
    for (const double v : x) ss += (v - mean) * (v - mean);
    const auto [m, h] = mean_and_ci95(x);
    CHECK(m == doctest::Approx(mean).epsilon(1e-15));
    CHECK(h == doctest::Approx(1.96 * std::sqrt(ss / 4.0) / std::sqrt(5.0)).epsilon(1e-14));
}

TEST_CASE("drop seeds are distinct across sweep and drop indices") {
    CHECK(drop_seed(1, 0, 1) != drop_seed(1, 1, 0));
    CHECK(drop_seed(1, 0, 0) != drop_seed(2, 0, 0));
    CHECK(drop_seed(5, 3, 9) == drop_seed(5, 3, 9));
}

TEST_CASE("very low threshold: random strategy detects everyone") {
    ExperimentConfig c = small_config();
    c.strategies = {Strategy::random};
    c.threshold_db = -40.0;
    const Codebook cb = build_codebook(c);
    for (std::size_t d = 0; d < 5; ++d) {
        const DropResult r = run_drop(c, cb, 1, d);
        REQUIRE_FALSE(r.failed);
        CHECK(r.strategies[0].detected == 6);
    }
}

TEST_CASE("run_drop is deterministic") {
    const ExperimentConfig c = small_config();
    const Codebook cb = build_codebook(c);
    const DropResult a = run_drop(c, cb, 1, 2), b = run_drop(c, cb, 1, 2);
    REQUIRE(a.strategies.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.strategies[i].detected == b.strategies[i].detected);
        CHECK(a.strategies[i].sum_rate == b.strategies[i].sum_rate);
        CHECK(a.strategies[i].provenance == b.strategies[i].provenance);
        CHECK(a.strategies[i].sdp_iterations == b.strategies[i].sdp_iterations);
        CHECK(a.strategies[i].sdp_min_normalized_slack == b.strategies[i].sdp_min_normalized_slack);
    }
    CHECK(a.strategies[0].provenance.has_value());
    CHECK_FALSE(a.strategies[1].provenance.has_value());
}

TEST_CASE("summary invariants") {
    const ExperimentConfig c = small_config();
    const MonteCarloSummary s = run_experiment(c, RunOptions{1, true, {}});
    REQUIRE(s.points.size() == 6);
    CHECK(s.n_total_drops == 8);
    CHECK(s.drops.size() == 8);
    for (const PointSummary& p : s.points) {
        CHECK(p.mean_detected >= 0.0);
        CHECK(p.mean_detected <= static_cast<double>(p.n_ues));
        CHECK(p.n_drops + s.n_failed_drops >= 4);
        std::vector<double> samples;
        for (const DropResult& d : s.drops) {
            if (d.sweep_value != p.sweep_value || d.failed) continue;
            for (const StrategyResult& r : d.strategies)
                if (r.strategy == p.strategy) samples.push_back(static_cast<double>(r.detected));
        }
        const auto [m, h] = mean_and_ci95(samples);
        CHECK(p.mean_detected == doctest::Approx(m));
        CHECK(p.ci_halfwidth_95 == doctest::Approx(h));
        if (p.strategy != Strategy::proposed) CHECK(p.sdp_solved_rate == 0.0);
    }
}

TEST_CASE("one drop gives a zero-width interval") {
    ExperimentConfig c = small_config();
    c.n_drops = 1;
    const MonteCarloSummary s = run_experiment(c);
    for (const PointSummary& p : s.points) CHECK(p.ci_halfwidth_95 == 0.0);
}

TEST_CASE("results do not depend on the thread count") {
    const ExperimentConfig c = small_config();
    CHECK(csv_of(run_experiment(c, RunOptions{1, false, {}})) == csv_of(run_experiment(c, RunOptions{3, false, {}})));
}

TEST_CASE("identical configs give byte-identical CSV files") {
    const ExperimentConfig c = small_config();
    const auto dir = std::filesystem::temp_directory_path();
    const auto p1 = dir / "risnoma_det_a.csv", p2 = dir / "risnoma_det_b.csv";
    emit_csv(run_experiment(c), p1);
    emit_csv(run_experiment(c), p2);
    std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
    const std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
    CHECK_FALSE(sa.empty());
    CHECK(sa == sb);
    CHECK(sa.find('\r') == std::string::npos);
    std::filesystem::remove(p1);
    std::filesystem::remove(p2);

    ExperimentConfig other = c;
    other.master_seed = 78;
    CHECK(csv_of(run_experiment(other)) != sa);
}

TEST_CASE("CSV layout and parse-back") {
    MonteCarloSummary empty;
    const std::string header =
        "sweep_variable,sweep_value,strategy,mean_detected,ci_lo,ci_hi,n_drops,sdp_solved_rate,mean_sum_rate_bps_hz\n";
    CHECK(csv_of(empty) == header);

    MonteCarloSummary one;
    one.sweep_variable = SweepVariable::spread_db;
    PointSummary p;
    p.sweep_value = 2.5;
    p.strategy = Strategy::sum_rate;
    p.mean_detected = 11.123456789012345;
    p.ci_halfwidth_95 = 0.1 / 3.0;
    p.n_drops = 300;
    p.sdp_solved_rate = 0.0;
    p.mean_sum_rate = 18.75;
    one.points.push_back(p);
    const std::string text = csv_of(one);
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);

    const std::string row = text.substr(header.size(), text.size() - header.size() - 1);
    const auto cells = split(row);
    REQUIRE(cells.size() == 9);
    CHECK(cells[0] == "spread_db");
    CHECK(std::stod(cells[1]) == 2.5);
    CHECK(cells[2] == "sum_rate");
    CHECK(std::abs(std::stod(cells[3]) - p.mean_detected) <= 1e-9);
    CHECK(std::abs(std::stod(cells[4]) - p.ci_lo()) <= 1e-9);
    CHECK(std::abs(std::stod(cells[5]) - p.ci_hi()) <= 1e-9);
    CHECK(cells[6] == "300");
    CHECK(std::stod(cells[7]) == 0.0);
    CHECK(std::abs(std::stod(cells[8]) - 18.75) <= 1e-9);

    CHECK_THROWS_AS(emit_csv(one, "/nonexistent-dir/x.csv"), IoError);
}

TEST_CASE("drop diagnostics CSV has one row per drop and strategy") {
    const ExperimentConfig c = small_config();
    const MonteCarloSummary s = run_experiment(c, RunOptions{1, true, {}});
    std::ostringstream os;
    write_drop_csv(s, os);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 8 * 3);
    CHECK(text.find(",proposed,") != std::string::npos);
}

TEST_CASE("raising the threshold never raises a mean") {
    ExperimentConfig c = small_config();
    c.sweep_values = {8};
    c.n_drops = 6;
    std::vector<MonteCarloSummary> runs;
    for (const double eps : {1.0, 4.0, 9.0}) {
        c.threshold_db = eps;
        runs.push_back(run_experiment(c));
    }
    for (std::size_t i = 0; i + 1 < runs.size(); ++i)
        for (std::size_t p = 0; p < runs[i].points.size(); ++p)
            CHECK(runs[i + 1].points[p].mean_detected <= runs[i].points[p].mean_detected);
}

TEST_CASE("codebook import overrides the design") {
    ExperimentConfig c = small_config();
    const Codebook designed = build_codebook(c);
    const auto path = std::filesystem::temp_directory_path() / "risnoma_cb.csv";
    write_codebook_csv(oma_codebook(4), path);
    c.codebook_csv = path;
    const Codebook imported = build_codebook(c);
    CHECK(imported.signatures() == oma_codebook(4).signatures());
    CHECK(imported.signatures() != designed.signatures());
    std::filesystem::remove(path);
}

TEST_CASE("progress callback sees every drop") {
    const ExperimentConfig c = small_config();
    std::size_t calls = 0, last = 0;
    RunOptions o;
    o.threads = 2;
    o.progress = [&](std::size_t done, std::size_t total) {
        ++calls;
        last = done;
        CHECK(total == 8);
    };
    run_experiment(c, o);
    CHECK(calls == 8);
    CHECK(last == 8);
}

}  // TEST_SUITE
