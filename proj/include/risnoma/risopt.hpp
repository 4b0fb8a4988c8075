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
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "risnoma/channel.hpp"
#include "risnoma/codebook.hpp"
#include "risnoma/numerics.hpp"
#include "risnoma/phase_shifts.hpp"
#include "risnoma/rng.hpp"

// RIS phase-shift strategies.
//
//   random     i.i.d. uniform phases
//   sum-rate   phases of the dominant eigenvector of sum_k beta_k^2 h_k h_k^H
//   proposed   ordering and MMSE filters frozen at the sum-rate solution,
//              per-stage SINR constraints lifted to W = w w^H, relaxed to a
//              semidefinite program over unit-diagonal PSD matrices, and
//              rounded back to unit modulus; sum-rate solution as fallback

namespace risnoma {

PhaseShifts random_shifts(std::size_t n_s, Rng& rng);

PhaseShifts sum_rate_shifts(const ClusterScenario& scenario);

// Per-stage SINR requirements as quadratic forms in w:
//   SINR_k >= eps_k  <=>  w^H (A_k - eps_k B_k) w >= 0
// with the ordering and filters computed once from the reference shifts.
// All vectors are indexed by detection stage.
struct SinrConstraintSet {
    std::vector<std::size_t> order;         // order[stage] = UE index
    std::vector<double> epsilons;           // eps of order[stage]
    std::vector<CVector> filters;           // MMSE filter used at each stage
    std::vector<HermitianMatrix> signal;    // A_k
    std::vector<HermitianMatrix> interference;  // B_k (includes the noise term)
    std::vector<HermitianMatrix> constraints;   // C_k = A_k - eps_k B_k

    std::size_t size() const noexcept { return constraints.size(); }
};

SinrConstraintSet build_constraints(const ClusterScenario& scenario, const Codebook& codebook,
                                    std::span<const std::size_t> assignment,
                                    std::span<const double> thresholds, const PhaseShifts& w_ref);

// First-order solver settings for the max-min-slack program
//   maximize t  s.t.  tr(C_k W) >= t,  diag(W) = 1,  W >= 0.
struct SdpParams {
    int max_iter = 5000;
    double tol = 1e-6;   // primal/dual residual tolerance (relative)
    double step = 0.0;   // initial ADMM penalty; 0 selects 1 / N_s
};

enum class SdpStatus { solved, budget_exhausted };

std::string_view to_string(SdpStatus s) noexcept;

struct SdpOutcome {
    SdpStatus status = SdpStatus::budget_exhausted;
    std::optional<HermitianMatrix> w_matrix;  // present iff solved
    std::vector<double> slacks;               // tr(C_k W) at the reported point
    std::vector<double> normalized_slacks;    // tr(C_k W) / ||C_k||_F
    int iterations = 0;
    double min_eig = 0.0;
    double max_diag_error = 0.0;
    // A Lagrangian bound proved max t < 0 (the instance is infeasible).
    bool infeasibility_certified = false;
};

SdpOutcome sdp_feasibility(std::span<const HermitianMatrix> constraints, std::size_t n_s,
                           const SdpParams& params = {});
SdpOutcome sdp_feasibility(const SinrConstraintSet& constraints, std::size_t n_s,
                           const SdpParams& params = {});

// Phases of the dominant eigenvector of W. Throws InvalidState unless solved.
PhaseShifts extract_phases(const SdpOutcome& outcome);

// min_k w^H C_k w / ||C_k||_F
double min_normalized_slack(std::span<const HermitianMatrix> constraints, const PhaseShifts& w);

// Draws n_samples vectors from CN(0, W), projects each to unit modulus and
// returns the candidate (including extract_phases) with the largest
// normalized minimum slack. Throws InvalidState unless solved or if
// n_samples == 0.
PhaseShifts gaussian_randomization(const SdpOutcome& outcome,
                                   std::span<const HermitianMatrix> constraints,
                                   std::size_t n_samples, Rng& rng);

enum class Provenance { sdp, fallback_sum_rate };

std::string_view to_string(Provenance p) noexcept;

struct ProposeParams {
    SdpParams sdp;
    bool randomization = false;
    std::size_t n_samples = 64;
    std::uint64_t randomization_seed = 0;
};

struct Proposal {
    PhaseShifts w;
    Provenance provenance;
    PhaseShifts w_sum;
    SdpOutcome sdp;
};

Proposal propose_shifts(const ClusterScenario& scenario, const Codebook& codebook,
                        std::span<const std::size_t> assignment, std::span<const double> thresholds,
                        const ProposeParams& params = {});

}  // namespace risnoma
