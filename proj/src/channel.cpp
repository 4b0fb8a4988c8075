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

#include "risnoma/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "risnoma/errors.hpp"
#include "risnoma/kernels.hpp"

namespace risnoma {

void ChannelConfig::validate() const {
    if (n_bs_antennas == 0 || n_ris_elements == 0 || n_ues == 0 || spreading_length == 0)
        throw ConfigError("channel: all element counts must be >= 1");
    if (!(ue_pathloss_spread_db >= 0.0))
        throw ConfigError("channel: ue_pathloss_spread_db must be >= 0");
    for (double v : {bs_ris_pathloss_db, ue_pathloss_mean_db, tx_power_dbm, noise_power_dbm})
        if (!std::isfinite(v)) throw ConfigError("channel: non-finite power or pathloss");
}

CVector make_steering(std::size_t n, double angle) {
    CVector v(n);
    const double step = std::numbers::pi * std::sin(angle);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(1.0, step * static_cast<double>(i));
    return v;
}

ClusterScenario make_scenario(const ChannelConfig& cfg, CVector bs_steering, CVector ris_steering,
                              std::vector<CVector> fading, std::vector<double> pathlosses_db) {
    const std::size_t n_s = ris_steering.size();
    if (fading.size() != pathlosses_db.size())
        throw DimensionMismatch("make_scenario: fading/pathloss count mismatch");
    for (const auto& h : fading)
        if (h.size() != n_s) throw DimensionMismatch("make_scenario: fading length != N_s");

    ClusterScenario s;
    const double n_r = static_cast<double>(bs_steering.size());
    const double common = n_r * n_r * db_to_linear(cfg.bs_ris_pathloss_db) *
                          dbm_to_watts(cfg.tx_power_dbm) *
                          static_cast<double>(cfg.spreading_length);
    s.effective_channels.reserve(fading.size());
    s.amplitude_gains.reserve(fading.size());
    for (std::size_t k = 0; k < fading.size(); ++k) {
        CVector hh(n_s);
        for (std::size_t n = 0; n < n_s; ++n) hh[n] = std::conj(ris_steering[n]) * fading[k][n];
        s.effective_channels.push_back(std::move(hh));
        s.amplitude_gains.push_back(std::sqrt(common * db_to_linear(pathlosses_db[k])));
    }
    s.post_mrc_noise_power = n_r * dbm_to_watts(cfg.noise_power_dbm);
    s.bs_steering = std::move(bs_steering);
    s.ris_steering = std::move(ris_steering);
    s.fading = std::move(fading);
    s.pathlosses_db = std::move(pathlosses_db);
    return s;
}

ClusterScenario draw_scenario(const ChannelConfig& cfg, Rng& rng) {
    cfg.validate();
    std::uniform_real_distribution<double> angle(-std::numbers::pi / 2, std::numbers::pi / 2);
    std::normal_distribution<double> tap(0.0, std::sqrt(0.5));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    const double bs_angle = angle(rng);
    const double ris_angle = angle(rng);
    std::vector<CVector> fading(cfg.n_ues, CVector(cfg.n_ris_elements));
    std::vector<double> pl(cfg.n_ues);
    for (std::size_t k = 0; k < cfg.n_ues; ++k) {
        for (auto& h : fading[k]) {
            const double re = tap(rng);
            const double im = tap(rng);
            h = {re, im};
        }
        pl[k] = cfg.ue_pathloss_mean_db + cfg.ue_pathloss_spread_db * unit(rng);
    }
    return make_scenario(cfg, make_steering(cfg.n_bs_antennas, bs_angle),
                         make_steering(cfg.n_ris_elements, ris_angle), std::move(fading),
                         std::move(pl));
}

cdouble effective_gain(const PhaseShifts& w, const ClusterScenario& scenario, std::size_t k) {
    if (k >= scenario.n_ues())
        throw DimensionMismatch("effective_gain: UE index " + std::to_string(k) + " out of range");
    if (w.size() != scenario.n_ris_elements())
        throw DimensionMismatch("effective_gain: phase-shift length != N_s");
    return scenario.amplitude_gains[k] * kernels::dotc(w.values(), scenario.effective_channels[k]);
}

}  // namespace risnoma
