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
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "risnoma/channel.hpp"
#include "risnoma/errors.hpp"

using namespace risnoma;
using cd = std::complex<double>;

TEST_SUITE("channel") {

TEST_CASE("unit conversions") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(db_to_linear(-65.0) == doctest::Approx(std::pow(10.0, -6.5)).epsilon(1e-14));
    CHECK(dbm_to_watts(30.0) == 1.0);
    CHECK(dbm_to_watts(-110.0) == doctest::Approx(1e-14).epsilon(1e-12));
}

TEST_CASE("make_steering at broadside and endfire") {
    const CVector a = make_steering(4, 0.0);
    for (const cd x : a) CHECK(x == cd(1.0, 0.0));
    const CVector b = make_steering(2, std::numbers::pi / 2);
    CHECK(std::abs(b[0] - cd(1.0, 0.0)) <= 1e-15);
    CHECK(std::abs(b[1] - cd(-1.0, 0.0)) <= 1e-15);
}

TEST_CASE("make_steering n=32 angle 0.7 follows the ULA formula") {
    const CVector a = make_steering(32, 0.7);
    CHECK(oracle::vnorm(a) * oracle::vnorm(a) == doctest::Approx(32.0).epsilon(1e-13));
    const double inc = std::numbers::pi * std::sin(0.7);
    for (std::size_t i = 0; i < 32; ++i) {
        CHECK(std::abs(a[i]) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(a[i] - std::exp(cd(0.0, inc * static_cast<double>(i)))) <= 1e-12);
        if (i > 0) CHECK(std::abs(a[i] / a[i - 1] - std::exp(cd(0.0, inc))) <= 1e-12);
    }
}

TEST_CASE("config validation") {
    ChannelConfig c;
    CHECK_NOTHROW(c.validate());
    c.n_ues = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ChannelConfig{};
    c.ue_pathloss_spread_db = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = ChannelConfig{};
    c.tx_power_dbm = std::nan("");
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("zero spread gives the mean pathloss for every UE") {
    ChannelConfig c;
    c.ue_pathloss_spread_db = 0.0;
    Rng rng(1);
    const ClusterScenario s = draw_scenario(c, rng);
    for (const double pl : s.pathlosses_db) CHECK(pl == -65.0);
}

TEST_CASE("pathlosses stay inside mean +- spread") {
    ChannelConfig c;
    c.ue_pathloss_spread_db = 3.0;
    c.n_ues = 16;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed);
        for (const double pl : draw_scenario(c, rng).pathlosses_db) {
            CHECK(pl >= -68.0);
            CHECK(pl <= -62.0);
        }
    }
}

TEST_CASE("reference scenario amplitude gains and noise") {
    ChannelConfig c;  // N_r = N_s = 32, L = 4, P = 30 dBm, -65 dB both hops
    Rng rng(3);
    const ClusterScenario s = draw_scenario(c, rng);
    const double beta2 = 32.0 * 32.0 * std::pow(10.0, -6.5) * std::pow(10.0, -6.5) * 1.0 * 4.0;
    CHECK(beta2 == doctest::Approx(4.096e-10).epsilon(1e-3));
    for (const double b : s.amplitude_gains) CHECK(b * b == doctest::Approx(beta2).epsilon(1e-12));
    CHECK(s.post_mrc_noise_power == doctest::Approx(32.0 * 1e-14).epsilon(1e-12));
}

TEST_CASE("scenario structure invariants") {
    ChannelConfig c;
    c.ue_pathloss_spread_db = 2.0;
    c.n_ris_elements = 16;
    c.n_bs_antennas = 8;
    c.n_ues = 5;
    Rng rng(77);
    const ClusterScenario s = draw_scenario(c, rng);
    REQUIRE(s.bs_steering.size() == 8);
    REQUIRE(s.ris_steering.size() == 16);
    REQUIRE(s.n_ues() == 5);
    for (const cd a : s.bs_steering) CHECK(std::abs(std::abs(a) - 1.0) <= 1e-12);
    for (const cd b : s.ris_steering) CHECK(std::abs(std::abs(b) - 1.0) <= 1e-12);
    for (std::size_t k = 0; k < 5; ++k) {
        CHECK(oracle::vnorm(s.effective_channels[k]) == doctest::Approx(oracle::vnorm(s.fading[k])).epsilon(1e-13));
        for (std::size_t n = 0; n < 16; ++n)
            CHECK(std::abs(s.effective_channels[k][n] - std::conj(s.ris_steering[n]) * s.fading[k][n]) <= 1e-15);
        CHECK(s.amplitude_gains[k] > 0.0);
    }
}

TEST_CASE("same seed gives bitwise identical scenarios") {
    ChannelConfig c;
    c.ue_pathloss_spread_db = 3.0;
    Rng r1(99), r2(99);
    const ClusterScenario a = draw_scenario(c, r1), b = draw_scenario(c, r2);
    CHECK(a.bs_steering == b.bs_steering);
    CHECK(a.ris_steering == b.ris_steering);
    CHECK(a.fading == b.fading);
    CHECK(a.pathlosses_db == b.pathlosses_db);
    CHECK(a.amplitude_gains == b.amplitude_gains);
    Rng r3(100);
    CHECK(draw_scenario(c, r3).fading != a.fading);
}

TEST_CASE("Rayleigh taps have unit variance per complex entry") {
    ChannelConfig c;
    c.n_ues = 1;
    double acc = 0.0;
    const int draws = 10000;
    Rng rng(2024);
    for (int i = 0; i < draws; ++i) {
        const ClusterScenario s = draw_scenario(c, rng);
        const double n = oracle::vnorm(s.fading[0]);
        acc += n * n / 32.0;
    }
    const double mean = acc / draws;
    CHECK(mean >= 0.97);
    CHECK(mean <= 1.03);
}

TEST_CASE("effective gain with a single element ignores the phase") {
    ChannelConfig c;
    c.n_ris_elements = 1;
    c.n_ues = 3;
    Rng rng(5);
    const ClusterScenario s = draw_scenario(c, rng);
    for (const double ph : {0.0, 1.0, 2.5, -3.0}) {
        const PhaseShifts w = PhaseShifts::from_phases(std::vector<double>{ph});
        for (std::size_t k = 0; k < 3; ++k)
            CHECK(std::abs(effective_gain(w, s, k)) ==
                  doctest::Approx(s.amplitude_gains[k] * std::abs(s.effective_channels[k][0])).epsilon(1e-13));
    }
}

TEST_CASE("co-phasing reaches the triangle bound and random w stays below it") {
    ChannelConfig c;
    c.n_ues = 4;
    Rng rng(6);
    const ClusterScenario s = draw_scenario(c, rng);
    std::mt19937_64 g(7);
    for (std::size_t k = 0; k < 4; ++k) {
        double bound = 0.0;
        for (const cd h : s.effective_channels[k]) bound += std::abs(h);
        bound *= s.amplitude_gains[k];
        const PhaseShifts co = PhaseShifts::from_phases_of(s.effective_channels[k]);
        CHECK(std::abs(effective_gain(co, s, k)) == doctest::Approx(bound).epsilon(1e-12));
        for (int t = 0; t < 200; ++t) {
            const PhaseShifts w(oracle::random_unit_modulus(g, 32));
            CHECK(std::abs(effective_gain(w, s, k)) <= bound * (1 + 1e-12));
        }
    }
}

TEST_CASE("effective gain equals the entrywise inner product") {
    ChannelConfig c;
    c.n_ues = 6;
    c.ue_pathloss_spread_db = 4.0;
    Rng rng(8);
    const ClusterScenario s = draw_scenario(c, rng);
    std::mt19937_64 g(9);
    for (int t = 0; t < 20; ++t) {
        const PhaseShifts w(oracle::random_unit_modulus(g, 32));
        for (std::size_t k = 0; k < 6; ++k) {
            cd ref = 0.0;
            for (std::size_t n = 0; n < 32; ++n) ref += std::conj(w[n]) * s.effective_channels[k][n];
            ref *= s.amplitude_gains[k];
            CHECK(std::abs(effective_gain(w, s, k) - ref) <= 1e-12 * std::abs(ref) + 1e-300);
        }
    }
    CHECK_THROWS_AS(effective_gain(PhaseShifts(CVector(31, 1.0)), s, 0), DimensionMismatch);
    CHECK_THROWS_AS(effective_gain(PhaseShifts(CVector(32, 1.0)), s, 6), DimensionMismatch);
}

TEST_CASE("PhaseShifts validation and rules") {
    CHECK_THROWS_AS(PhaseShifts(CVector{}), DimensionMismatch);
    CHECK_THROWS_AS(PhaseShifts(CVector{cd(1.0, 0.0), cd(0.5, 0.0)}), InvalidState);
    const PhaseShifts z = PhaseShifts::from_phases_of(CVector{cd(0.0, 0.0), cd(0.0, -2.0)});
    CHECK(z[0] == cd(1.0, 0.0));
    CHECK(std::abs(z[1] - cd(0.0, -1.0)) <= 1e-15);
    const PhaseShifts r = z.rotated(std::numbers::pi / 2);
    CHECK(std::abs(r[0] - cd(0.0, 1.0)) <= 1e-15);
    CHECK(std::abs(r[1] - cd(1.0, 0.0)) <= 1e-15);
}

}  // TEST_SUITE
