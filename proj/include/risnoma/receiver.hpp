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
#include <span>
#include <vector>

#include "risnoma/channel.hpp"
#include "risnoma/codebook.hpp"
#include "risnoma/numerics.hpp"
#include "risnoma/phase_shifts.hpp"

// Post-MRC MMSE interference cancellation: one UE detected per stage, in
// decreasing received strength, with per-stage MMSE filters over the
// spreading dimension.

namespace risnoma {

// g_k = beta_k (w^H h_hat_k) s_k for every UE, plus the post-MRC noise power.
struct CompositeGains {
    std::size_t length = 0;  // L
    std::vector<CVector> g;
    double noise_power = 0.0;

    std::size_t n_ues() const noexcept { return g.size(); }
};

enum class IcMode {
    genie,      // every processed UE is cancelled, detected or not
    realistic,  // only detected UEs are cancelled
};

struct DetectionOutcome {
    std::vector<std::size_t> order;  // UE indices, first detected first
    std::vector<double> stage_sinrs;  // indexed by UE: SINR at that UE's stage (linear)
    std::vector<bool> detected;      // indexed by UE
    std::size_t n_detected = 0;
    IcMode mode = IcMode::realistic;
};

CompositeGains composite_gains(const PhaseShifts& w, const ClusterScenario& scenario,
                               const Codebook& codebook, std::span<const std::size_t> assignment);

// MMSE filter v for `target` against `residual_set` (which contains target):
// v = (sum_{l in residual} g_l g_l^H + sigma^2 I)^{-1} g_target.
CVector mmse_filter(const CompositeGains& gains, std::size_t target,
                    std::span<const std::size_t> residual_set);

// |v^H g_t|^2 / (sum_{l in interferers} |v^H g_l|^2 + sigma^2 ||v||^2)
double stage_sinr(const CompositeGains& gains, std::span<const cdouble> v, std::size_t target,
                  std::span<const std::size_t> interferer_set);

// UE indices sorted by |beta_k w^H h_hat_k| descending, ties by index.
std::vector<std::size_t> detection_order(const PhaseShifts& w, const ClusterScenario& scenario);
std::vector<std::size_t> order_by_strength(std::span<const double> strengths);

DetectionOutcome run_ic_detection(const PhaseShifts& w, const ClusterScenario& scenario,
                                  const Codebook& codebook, std::span<const std::size_t> assignment,
                                  std::span<const double> thresholds, IcMode mode);

// Same pipeline on precomputed gains with an explicit order.
DetectionOutcome run_ic_detection(const CompositeGains& gains, std::span<const std::size_t> order,
                                  std::span<const double> thresholds, IcMode mode);

// (1/L) log2 det(I_L + sum_k g_k g_k^H / sigma^2), bits/s/Hz.
double sum_rate(const CompositeGains& gains);

}  // namespace risnoma
