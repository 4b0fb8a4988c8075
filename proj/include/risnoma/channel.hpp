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

#include <cmath>
#include <cstddef>
#include <vector>

#include "risnoma/numerics.hpp"
#include "risnoma/phase_shifts.hpp"
#include "risnoma/rng.hpp"

// One cluster of single-antenna UEs reaching an N_r-antenna base station
// through an N_s-element RIS. The BS-RIS link is line of sight (rank one,
// a b^H); RIS-UE links are Rayleigh. Direct UE-BS paths and intercluster
// interference are not modeled. The simulation works at the output of the
// MRC spatial filter a^H, where UE k contributes beta_k (w^H h_hat_k) s_k x_k.

namespace risnoma {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

struct ChannelConfig {
    std::size_t n_bs_antennas = 32;      // N_r
    std::size_t n_ris_elements = 32;     // N_s
    std::size_t n_ues = 12;              // K
    std::size_t spreading_length = 4;    // L
    double bs_ris_pathloss_db = -65.0;
    double ue_pathloss_mean_db = -65.0;
    double ue_pathloss_spread_db = 0.0;  // half-width s of the uniform dB draw
    double tx_power_dbm = 30.0;          // common to all UEs
    double noise_power_dbm = -110.0;

    // Throws ConfigError.
    void validate() const;
};

struct ClusterScenario {
    CVector bs_steering;                   // a, length N_r
    CVector ris_steering;                  // b, length N_s
    std::vector<CVector> fading;           // h_k, length N_s each
    std::vector<double> pathlosses_db;     // per UE
    std::vector<CVector> effective_channels;  // h_hat_k = conj(b) .* h_k
    std::vector<double> amplitude_gains;   // beta_k = sqrt(N_r^2 l_BS l_k P L)
    double post_mrc_noise_power = 0.0;     // N_r * sigma_n^2, watts

    std::size_t n_ues() const noexcept { return effective_channels.size(); }
    std::size_t n_ris_elements() const noexcept { return ris_steering.size(); }
};

// Half-wavelength ULA response: entry i = exp(j pi i sin(angle)).
CVector make_steering(std::size_t n, double angle);

// Draw order: BS angle, RIS angle, then per UE its N_s fading taps followed
// by its pathloss. Deterministic for a given generator state.
ClusterScenario draw_scenario(const ChannelConfig& cfg, Rng& rng);

// Derived fields from the primitive draws; exposed so tests can build
// hand-made scenarios.
ClusterScenario make_scenario(const ChannelConfig& cfg, CVector bs_steering, CVector ris_steering,
                              std::vector<CVector> fading, std::vector<double> pathlosses_db);

// beta_k * (w^H h_hat_k)
cdouble effective_gain(const PhaseShifts& w, const ClusterScenario& scenario, std::size_t k);

}  // namespace risnoma
