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

#include "risnoma/risopt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "risnoma/errors.hpp"
#include "risnoma/kernels.hpp"
#include "risnoma/receiver.hpp"

namespace risnoma {

PhaseShifts random_shifts(std::size_t n_s, Rng& rng) {
    if (n_s == 0) throw DimensionMismatch("random_shifts: n_s must be >= 1");
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<double> p(n_s);
    for (auto& x : p) x = phase(rng);
    return PhaseShifts::from_phases(p);
}

PhaseShifts sum_rate_shifts(const ClusterScenario& scenario) {
    if (scenario.n_ues() == 0) throw DimensionMismatch("sum_rate_shifts: no UEs");
    HermitianMatrix h(scenario.n_ris_elements());
    for (std::size_t k = 0; k < scenario.n_ues(); ++k) {
        const double b = scenario.amplitude_gains[k];
        h.add_outer(b * b, scenario.effective_channels[k]);
    }
    const EigenPair top = dominant_eigenpair(h);
    return PhaseShifts::from_phases_of(top.vector);
}

SinrConstraintSet build_constraints(const ClusterScenario& scenario, const Codebook& codebook,
                                    std::span<const std::size_t> assignment,
                                    std::span<const double> thresholds, const PhaseShifts& w_ref) {
    const std::size_t k_ues = scenario.n_ues();
    const std::size_t n_s = scenario.n_ris_elements();
    if (thresholds.size() != k_ues) throw DimensionMismatch("build_constraints: thresholds size != K");

    const CompositeGains gains = composite_gains(w_ref, scenario, codebook, assignment);
    SinrConstraintSet out;
    out.order = detection_order(w_ref, scenario);

    std::vector<std::size_t> residual;
    for (std::size_t stage = 0; stage < k_ues; ++stage) {
        const std::size_t target = out.order[stage];
        residual.assign(out.order.begin() + static_cast<std::ptrdiff_t>(stage), out.order.end());
        CVector v = mmse_filter(gains, target, residual);

        const auto coupling = [&](std::size_t ue) {
            const double beta = scenario.amplitude_gains[ue];
            return beta * beta * std::norm(kernels::dotc(v, codebook.signature(assignment[ue])));
        };
        HermitianMatrix a = HermitianMatrix::outer(scenario.effective_channels[target], coupling(target));
        HermitianMatrix b(n_s);
        for (std::size_t later = stage + 1; later < k_ues; ++later) {
            const std::size_t ue = out.order[later];
            b.add_outer(coupling(ue), scenario.effective_channels[ue]);
        }
        // Noise term spread over the identity using w^H w = N_s.
        b.add_identity(scenario.post_mrc_noise_power * kernels::norm_sq(v) / static_cast<double>(n_s));

        const double eps = thresholds[target];
        HermitianMatrix c = a;
        c.add_scaled(-eps, b);

        out.epsilons.push_back(eps);
        out.filters.push_back(std::move(v));
        out.signal.push_back(std::move(a));
        out.interference.push_back(std::move(b));
        out.constraints.push_back(std::move(c));
    }
    return out;
}

PhaseShifts extract_phases(const SdpOutcome& outcome) {
    if (outcome.status != SdpStatus::solved || !outcome.w_matrix)
        throw InvalidState("extract_phases: SDP outcome is not solved");
    const EigenPair top = dominant_eigenpair(*outcome.w_matrix);
    return PhaseShifts::from_phases_of(top.vector);
}

double min_normalized_slack(std::span<const HermitianMatrix> constraints, const PhaseShifts& w) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& c : constraints) {
        const double f = c.frobenius_norm();
        const double q = c.quadratic_form(w.values());
        mn = std::min(mn, f > 0.0 ? q / f : 0.0);
    }
    return mn;
}

PhaseShifts gaussian_randomization(const SdpOutcome& outcome,
                                   std::span<const HermitianMatrix> constraints,
                                   std::size_t n_samples, Rng& rng) {
    if (n_samples == 0) throw InvalidState("gaussian_randomization: n_samples must be >= 1");
    PhaseShifts best = extract_phases(outcome);
    double best_score = min_normalized_slack(constraints, best);

    const HermitianEigen eig = hermitian_eigen(*outcome.w_matrix);
    const std::size_t n = eig.values.size();
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CVector xi(n);
    for (std::size_t s = 0; s < n_samples; ++s) {
        std::fill(xi.begin(), xi.end(), cdouble(0.0));
        for (std::size_t i = 0; i < n; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            const double lam = std::max(eig.values[i], 0.0);
            if (lam == 0.0) continue;
            kernels::axpy(std::sqrt(lam) * cdouble(re, im), eig.vectors[i], xi);
        }
        const PhaseShifts cand = PhaseShifts::from_phases_of(xi);
        const double score = min_normalized_slack(constraints, cand);
        if (score > best_score) {
            best_score = score;
            best = cand;
        }
    }
    return best;
}

std::string_view to_string(Provenance p) noexcept {
    return p == Provenance::sdp ? "sdp" : "fallback_sum_rate";
}

Proposal propose_shifts(const ClusterScenario& scenario, const Codebook& codebook,
                        std::span<const std::size_t> assignment, std::span<const double> thresholds,
                        const ProposeParams& params) {
    PhaseShifts w_sum = sum_rate_shifts(scenario);
    const SinrConstraintSet cs = build_constraints(scenario, codebook, assignment, thresholds, w_sum);
    SdpOutcome outcome = sdp_feasibility(cs, scenario.n_ris_elements(), params.sdp);
    if (outcome.status != SdpStatus::solved)
        return {w_sum, Provenance::fallback_sum_rate, w_sum, std::move(outcome)};

    PhaseShifts w = [&] {
        if (!params.randomization) return extract_phases(outcome);
        Rng rng(params.randomization_seed);
        return gaussian_randomization(outcome, cs.constraints, params.n_samples, rng);
    }();
    return {std::move(w), Provenance::sdp, std::move(w_sum), std::move(outcome)};
}

}  // namespace risnoma
