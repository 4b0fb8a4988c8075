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

// Max-min-slack relaxation solved by ADMM (two-block splitting):
//
//   maximize t  s.t.  (W, t) in P = {diag(W) = 1, <C_k, W> >= t},  Z in PSD,  W = Z.
//
// The P-step is a Euclidean projection with a linear objective. Its dual is a
// K-dimensional QP over the probability simplex (the multipliers of the slack
// constraints sum to one because t is free). The PSD step is an eigenvalue
// clip. Constraints are normalized to unit Frobenius norm first; feasibility
// is invariant to that scaling.
//
// Every iterate Z is PSD, so D^{-1/2} Z D^{-1/2} (D = diag Z) is an exactly
// feasible point of the elliptope. Its minimum slack certifies feasibility;
// a Lagrangian upper bound on t certifies infeasibility.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "risnoma/errors.hpp"
#include "risnoma/kernels.hpp"
#include "risnoma/risopt.hpp"

namespace risnoma {
namespace {

constexpr double kInvariantTol = 1e-6;
constexpr double kRelax = 1.6;

// argmin over the simplex of (1/2) lam^T H lam + a^T lam with H = Q / rho, by
// a primal active-set method warm-started at `lam`. A tiny ridge keeps the
// equality-constrained subproblems nonsingular when Q is rank deficient.
void solve_simplex_qp(const std::vector<double>& q, double rho, const std::vector<double>& a,
                      std::vector<double>& lam) {
    const auto k = static_cast<Eigen::Index>(a.size());
    if (k == 1) {
        lam.assign(1, 1.0);
        return;
    }
    Eigen::MatrixXd h = Eigen::Map<const Eigen::MatrixXd>(q.data(), k, k) / rho;
    const double scale = h.diagonal().maxCoeff();
    if (!(scale > 1e-300) || !std::isfinite(scale)) {
        const auto best = std::min_element(a.begin(), a.end()) - a.begin();
        lam.assign(a.size(), 0.0);
        lam[static_cast<std::size_t>(best)] = 1.0;
        return;
    }
    h.diagonal().array() += 1e-13 * scale;
    const Eigen::Map<const Eigen::VectorXd> lin(a.data(), k);

    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(lam.data(), k).cwiseMax(0.0);
    if (!(x.sum() > 0.0)) x.setConstant(1.0);
    x /= x.sum();
    std::vector<bool> free(a.size());
    for (Eigen::Index i = 0; i < k; ++i) free[static_cast<std::size_t>(i)] = x(i) > 0.0;

    std::vector<Eigen::Index> f;
    bool face_optimal = false;
    for (int iter = 0; iter < 8 * k + 32; ++iter) {
        const Eigen::VectorXd g = h * x + lin;
        f.clear();
        for (Eigen::Index i = 0; i < k; ++i)
            if (free[static_cast<std::size_t>(i)]) f.push_back(i);
        const auto nf = static_cast<Eigen::Index>(f.size());

        if (face_optimal || nf == 1) {
            // Release the bound index with the most negative multiplier.
            double mu = 0.0;
            for (const auto i : f) mu += g(i);
            mu /= static_cast<double>(nf);
            const double tol = 1e-12 * (g.cwiseAbs().maxCoeff() + 1e-300);
            Eigen::Index enter = -1;
            double worst = -tol;
            for (Eigen::Index i = 0; i < k; ++i) {
                if (free[static_cast<std::size_t>(i)]) continue;
                if (g(i) - mu < worst) {
                    worst = g(i) - mu;
                    enter = i;
                }
            }
            if (enter < 0) break;
            free[static_cast<std::size_t>(enter)] = true;
            face_optimal = false;
            continue;
        }

        // min over d with sum d = 0 on the free set: KKT system of size nf + 1.
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(nf + 1, nf + 1);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nf + 1);
        for (Eigen::Index r = 0; r < nf; ++r) {
            for (Eigen::Index c = 0; c < nf; ++c) kkt(r, c) = h(f[static_cast<std::size_t>(r)], f[static_cast<std::size_t>(c)]);
            kkt(r, nf) = kkt(nf, r) = 1.0;
            rhs(r) = -g(f[static_cast<std::size_t>(r)]);
        }
        const Eigen::VectorXd sol = kkt.partialPivLu().solve(rhs);

        double alpha = 1.0;
        Eigen::Index block = -1;
        for (Eigen::Index r = 0; r < nf; ++r) {
            const double d = sol(r);
            const Eigen::Index i = f[static_cast<std::size_t>(r)];
            if (d < 0.0 && -x(i) / d < alpha) {
                alpha = -x(i) / d;
                block = i;
            }
        }
        for (Eigen::Index r = 0; r < nf; ++r) x(f[static_cast<std::size_t>(r)]) += alpha * sol(r);
        if (block >= 0) {
            x(block) = 0.0;
            free[static_cast<std::size_t>(block)] = false;
        } else {
            face_optimal = true;
        }
        x = x.cwiseMax(0.0);
        x /= x.sum();
    }
    lam.assign(x.data(), x.data() + k);
}

double max_eigenvalue(const HermitianMatrix& m) {
    HermitianMatrix neg = m;
    neg.scale(-1.0);
    return -min_eigenvalue(neg);
}

// D^{-1/2} z D^{-1/2}; nullopt when some diagonal entry is not positive.
std::optional<HermitianMatrix> unit_diagonal_scaling(const HermitianMatrix& z) {
    const std::size_t n = z.dim();
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = z(i, i).real();
        if (!(d > 0.0)) return std::nullopt;
        s[i] = 1.0 / std::sqrt(d);
    }
    HermitianMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.set_diagonal(i, 1.0);
        for (std::size_t j = i + 1; j < n; ++j) out.set(i, j, z(i, j) * (s[i] * s[j]));
    }
    return out;
}

double min_slack(std::span<const HermitianMatrix> normalized, const HermitianMatrix& w) {
    double mn = std::numeric_limits<double>::infinity();
    for (const auto& c : normalized) mn = std::min(mn, c.inner(w));
    return mn;
}

SdpOutcome describe(std::span<const HermitianMatrix> constraints,
                    std::span<const HermitianMatrix> normalized, const HermitianMatrix& w,
                    int iterations) {
    SdpOutcome out;
    out.iterations = iterations;
    for (std::size_t k = 0; k < constraints.size(); ++k) {
        out.slacks.push_back(constraints[k].inner(w));
        out.normalized_slacks.push_back(normalized[k].inner(w));
    }
    out.min_eig = min_eigenvalue(w);
    for (std::size_t i = 0; i < w.dim(); ++i)
        out.max_diag_error = std::max(out.max_diag_error, std::abs(w(i, i).real() - 1.0));
    const double worst = out.normalized_slacks.empty()
                             ? 0.0
                             : *std::min_element(out.normalized_slacks.begin(), out.normalized_slacks.end());
    const double worst_raw =
        out.slacks.empty() ? 0.0 : *std::min_element(out.slacks.begin(), out.slacks.end());
    if (worst >= 0.0 && worst_raw >= -kInvariantTol && out.min_eig >= -kInvariantTol &&
        out.max_diag_error <= kInvariantTol) {
        out.status = SdpStatus::solved;
        out.w_matrix = w;
    }
    return out;
}

}  // namespace

std::string_view to_string(SdpStatus s) noexcept {
    return s == SdpStatus::solved ? "solved" : "budget_exhausted";
}

SdpOutcome sdp_feasibility(const SinrConstraintSet& constraints, std::size_t n_s,
                           const SdpParams& params) {
    return sdp_feasibility(constraints.constraints, n_s, params);
}

SdpOutcome sdp_feasibility(std::span<const HermitianMatrix> constraints, std::size_t n,
                           const SdpParams& params) {
    if (n == 0) throw DimensionMismatch("sdp_feasibility: n_s must be >= 1");
    for (const auto& c : constraints)
        if (c.dim() != n) throw DimensionMismatch("sdp_feasibility: constraint dimension != n_s");
    const std::size_t k = constraints.size();

    // Infinite thresholds leave inf/NaN entries; no W can satisfy those.
    for (const auto& c : constraints)
        for (const cdouble x : c.data())
            if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return SdpOutcome{};

    std::vector<HermitianMatrix> unit;      // C_k / ||C_k||_F
    std::vector<HermitianMatrix> unit_off;  // same with zero diagonal
    std::vector<double> diag_part(k);       // sum_i [C_k / ||C_k||]_ii
    unit.reserve(k);
    unit_off.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        HermitianMatrix c = constraints[i];
        const double f = c.frobenius_norm();
        if (f > 0.0) c.scale(1.0 / f);
        diag_part[i] = c.trace();
        HermitianMatrix off = c;
        for (std::size_t d = 0; d < n; ++d) off.set_diagonal(d, 0.0);
        unit.push_back(std::move(c));
        unit_off.push_back(std::move(off));
    }

    if (n == 1 || k == 0) return describe(constraints, unit, HermitianMatrix::identity(n), 0);

    std::vector<double> q(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i; j < k; ++j) q[i * k + j] = q[j * k + i] = unit_off[i].inner(unit_off[j]);

    const double nd = static_cast<double>(n);
    double rho = params.step > 0.0 ? params.step : 1.0 / nd;
    HermitianMatrix z = HermitianMatrix::identity(n);
    HermitianMatrix u(n);
    std::vector<double> lam(k, 1.0 / static_cast<double>(k)), a(k);

    std::optional<HermitianMatrix> best;
    double best_t = -std::numeric_limits<double>::infinity();
    bool infeasible = false;
    int it = 0;
    for (; it < params.max_iter; ++it) {
        // P-step on M = Z - U.
        HermitianMatrix w = z;
        w.add_scaled(-1.0, u);
        for (std::size_t i = 0; i < k; ++i) a[i] = unit_off[i].inner(w) + diag_part[i];
        solve_simplex_qp(q, rho, a, lam);
        for (std::size_t d = 0; d < n; ++d) w.set_diagonal(d, 1.0);
        for (std::size_t i = 0; i < k; ++i)
            if (lam[i] > 0.0) w.add_scaled(lam[i] / rho, unit_off[i]);

        // Over-relaxed PSD step and scaled dual update.
        HermitianMatrix w_hat = w;
        w_hat.scale(kRelax);
        w_hat.add_scaled(1.0 - kRelax, z);
        HermitianMatrix v = w_hat;
        v.add_scaled(1.0, u);
        HermitianMatrix z_next = psd_project(v);
        w_hat.add_scaled(-1.0, z_next);
        u.add_scaled(1.0, w_hat);
        HermitianMatrix diff = w;
        diff.add_scaled(-1.0, z_next);

        HermitianMatrix dz = z_next;
        dz.add_scaled(-1.0, z);
        const double r_pri = diff.frobenius_norm();
        const double r_dual = rho * dz.frobenius_norm();
        z = std::move(z_next);

        if (auto cert = unit_diagonal_scaling(z)) {
            const double t = min_slack(unit, *cert);
            if (t > best_t) {
                best_t = t;
                best = std::move(cert);
            }
        }

        const double eps_pri = params.tol * (nd + std::max(w.frobenius_norm(), z.frobenius_norm()));
        const double eps_dual = params.tol * (nd + rho * u.frobenius_norm());
        if (r_pri <= eps_pri && r_dual <= eps_dual) {
            ++it;
            break;
        }

        if (it % 25 == 24) {
            // t* <= max over the elliptope of <G, W> for any simplex weights.
            HermitianMatrix g(n);
            for (std::size_t i = 0; i < k; ++i) g.add_scaled(lam[i], unit[i]);
            HermitianMatrix g_off = g;
            for (std::size_t d = 0; d < n; ++d) g_off.set_diagonal(d, 0.0);
            const double bound = std::min(nd * max_eigenvalue(g), g.trace() + nd * max_eigenvalue(g_off));
            if (bound < -params.tol) {
                infeasible = true;
                ++it;
                break;
            }
        }

        if (it % 10 == 9) {
            if (r_pri > 10.0 * r_dual) {
                rho *= 2.0;
                u.scale(0.5);
            } else if (r_dual > 10.0 * r_pri) {
                rho *= 0.5;
                u.scale(2.0);
            }
        }
    }

    SdpOutcome out;
    if (best) {
        out = describe(constraints, unit, *best, it);
    } else {
        out.iterations = it;
    }
    if (infeasible) {
        out.infeasibility_certified = true;
        out.status = SdpStatus::budget_exhausted;
        out.w_matrix.reset();
    }
    if (out.status != SdpStatus::solved) out.w_matrix.reset();
    return out;
}

}  // namespace risnoma
