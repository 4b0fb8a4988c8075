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

#include "risnoma/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "risnoma/errors.hpp"
#include "risnoma/kernels.hpp"

namespace risnoma {

CompositeGains composite_gains(const PhaseShifts& w, const ClusterScenario& scenario,
                               const Codebook& codebook, std::span<const std::size_t> assignment) {
    const std::size_t k_ues = scenario.n_ues();
    if (assignment.size() != k_ues)
        throw DimensionMismatch("composite_gains: assignment size != K");
    CompositeGains out;
    out.length = codebook.length();
    out.noise_power = scenario.post_mrc_noise_power;
    out.g.reserve(k_ues);
    for (std::size_t k = 0; k < k_ues; ++k) {
        if (assignment[k] >= codebook.size())
            throw DimensionMismatch("composite_gains: signature index out of range");
        const cdouble a = effective_gain(w, scenario, k);
        CVector g = codebook.signature(assignment[k]);
        for (auto& x : g) x *= a;
        out.g.push_back(std::move(g));
    }
    return out;
}

CVector mmse_filter(const CompositeGains& gains, std::size_t target,
                    std::span<const std::size_t> residual_set) {
    if (std::find(residual_set.begin(), residual_set.end(), target) == residual_set.end())
        throw InvalidState("mmse_filter: target not in residual set");
    HermitianMatrix cov = HermitianMatrix::identity(gains.length);
    cov.scale(gains.noise_power);
    for (const std::size_t l : residual_set) cov.add_outer(1.0, gains.g.at(l));
    return solve_hermitian_pd(cov, gains.g.at(target));
}

double stage_sinr(const CompositeGains& gains, std::span<const cdouble> v, std::size_t target,
                  std::span<const std::size_t> interferer_set) {
    const double signal = std::norm(kernels::dotc(v, gains.g.at(target)));
    double denom = gains.noise_power * kernels::norm_sq(v);
    for (const std::size_t l : interferer_set) denom += std::norm(kernels::dotc(v, gains.g.at(l)));
    return signal / denom;
}

std::vector<std::size_t> order_by_strength(std::span<const double> strengths) {
    std::vector<std::size_t> idx(strengths.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return strengths[a] > strengths[b]; });
    return idx;
}

std::vector<std::size_t> detection_order(const PhaseShifts& w, const ClusterScenario& scenario) {
    std::vector<double> strength(scenario.n_ues());
    for (std::size_t k = 0; k < strength.size(); ++k)
        strength[k] = std::abs(effective_gain(w, scenario, k));
    return order_by_strength(strength);
}

DetectionOutcome run_ic_detection(const CompositeGains& gains, std::span<const std::size_t> order,
                                  std::span<const double> thresholds, IcMode mode) {
    const std::size_t k_ues = gains.n_ues();
    if (thresholds.size() != k_ues || order.size() != k_ues)
        throw DimensionMismatch("run_ic_detection: thresholds/order size != K");
    for (const double eps : thresholds)
        if (!(eps > 0.0)) throw InvalidState("run_ic_detection: thresholds must be > 0");

    DetectionOutcome out;
    out.order.assign(order.begin(), order.end());
    out.stage_sinrs.assign(k_ues, 0.0);
    out.detected.assign(k_ues, false);
    out.mode = mode;

    std::vector<std::size_t> failed;  // realistic mode: still interfering
    std::vector<std::size_t> residual, interferers;
    for (std::size_t stage = 0; stage < k_ues; ++stage) {
        const std::size_t target = order[stage];
        interferers.assign(order.begin() + static_cast<std::ptrdiff_t>(stage) + 1, order.end());
        interferers.insert(interferers.end(), failed.begin(), failed.end());
        residual = interferers;
        residual.push_back(target);

        const CVector v = mmse_filter(gains, target, residual);
        const double sinr = stage_sinr(gains, v, target, interferers);
        out.stage_sinrs[target] = sinr;
        if (sinr >= thresholds[target]) {
            out.detected[target] = true;
            ++out.n_detected;
        } else if (mode == IcMode::realistic) {
            failed.push_back(target);
        }
    }
    return out;
}

DetectionOutcome run_ic_detection(const PhaseShifts& w, const ClusterScenario& scenario,
                                  const Codebook& codebook, std::span<const std::size_t> assignment,
                                  std::span<const double> thresholds, IcMode mode) {
    const CompositeGains gains = composite_gains(w, scenario, codebook, assignment);
    const std::vector<std::size_t> order = detection_order(w, scenario);
    return run_ic_detection(gains, order, thresholds, mode);
}

double sum_rate(const CompositeGains& gains) {
    if (gains.length == 0) throw DimensionMismatch("sum_rate: spreading length must be >= 1");
    if (gains.n_ues() == 0) return 0.0;
    HermitianMatrix m = HermitianMatrix::identity(gains.length);
    for (const auto& g : gains.g) m.add_outer(1.0 / gains.noise_power, g);
    return log2_det_hpd(m) / static_cast<double>(gains.length);
}

}  // namespace risnoma
