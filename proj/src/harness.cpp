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

#include "risnoma/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "risnoma/channel.hpp"
#include "risnoma/errors.hpp"
#include "risnoma/receiver.hpp"
#include "risnoma/rng.hpp"

namespace risnoma {
namespace {

constexpr std::uint64_t kCodebookStream = 0xC0DEB00C;

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

std::string fmt(std::size_t v) { return std::to_string(v); }

StrategyResult evaluate(const ExperimentConfig& config, const ClusterScenario& sc,
                        const Codebook& cb, std::span<const std::size_t> assign,
                        std::span<const double> thr, Strategy strategy, std::uint64_t seed) {
    StrategyResult r;
    r.strategy = strategy;
    std::optional<PhaseShifts> w;
    switch (strategy) {
        case Strategy::random: {
            Rng rng(derive_seed(seed, {kRandomShiftStream}));
            w = random_shifts(sc.n_ris_elements(), rng);
            break;
        }
        case Strategy::sum_rate: w = sum_rate_shifts(sc); break;
        case Strategy::proposed: {
            ProposeParams pp;
            pp.sdp = config.sdp;
            pp.randomization = config.randomization;
            pp.n_samples = config.randomization_samples;
            pp.randomization_seed = derive_seed(seed, {kRandomizationStream});
            Proposal p = propose_shifts(sc, cb, assign, thr, pp);
            r.provenance = p.provenance;
            r.sdp_iterations = p.sdp.iterations;
            r.sdp_min_eig = p.sdp.min_eig;
            r.sdp_min_normalized_slack =
                p.sdp.normalized_slacks.empty()
                    ? 0.0
                    : *std::min_element(p.sdp.normalized_slacks.begin(), p.sdp.normalized_slacks.end());
            w = std::move(p.w);
            break;
        }
    }
    const DetectionOutcome det = run_ic_detection(*w, sc, cb, assign, thr, config.ic_mode);
    r.detected = det.n_detected;
    r.sum_rate = sum_rate(composite_gains(*w, sc, cb, assign));
    return r;
}

}  // namespace

std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t sweep_index, std::size_t drop_index) {
    return derive_seed(master_seed, {static_cast<std::uint64_t>(sweep_index),
                                     static_cast<std::uint64_t>(drop_index)});
}

Codebook build_codebook(const ExperimentConfig& config) {
    if (config.codebook_csv) {
        Codebook cb = read_codebook_csv(*config.codebook_csv);
        if (cb.length() != config.codebook_length)
            throw ConfigError("codebook CSV length does not match codebook.length");
        return cb;
    }
    if (config.codebook_kind == CodebookKind::oma) return oma_codebook(config.codebook_length);
    Rng rng(derive_seed(config.master_seed, {kCodebookStream}));
    return grassmannian_design(config.codebook_length, config.codebook_size, rng,
                               config.codebook_design_iters);
}

DropResult run_drop(const ExperimentConfig& config, const Codebook& codebook,
                    std::size_t sweep_index, std::size_t drop_index) {
    DropResult out;
    out.sweep_index = sweep_index;
    out.drop_index = drop_index;
    out.sweep_value = config.sweep_values.at(sweep_index);
    const ChannelConfig ch = config.channel_at(out.sweep_value);
    out.n_ues = ch.n_ues;
    const std::uint64_t seed = drop_seed(config.master_seed, sweep_index, drop_index);
    try {
        Rng rng(derive_seed(seed, {kChannelStream}));
        const ClusterScenario sc = draw_scenario(ch, rng);
        const std::vector<std::size_t> assign = assign_signatures(ch.n_ues, codebook);
        const std::vector<double> thr(ch.n_ues, db_to_linear(config.threshold_db));
        for (const Strategy s : config.strategies)
            out.strategies.push_back(evaluate(config, sc, codebook, assign, thr, s, seed));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        out.failed = true;
        out.error = e.what();
        out.strategies.clear();
    }
    return out;
}

std::pair<double, double> mean_and_ci95(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n == 0) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
    double mean = 0.0;
    for (const double v : x) mean += v;
    mean /= static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    double ss = 0.0;
    for (const double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    return {mean, 1.96 * sd / std::sqrt(static_cast<double>(n))};
}

double MonteCarloSummary::failure_rate() const noexcept {
    return n_total_drops == 0 ? 0.0
                              : static_cast<double>(n_failed_drops) / static_cast<double>(n_total_drops);
}

const PointSummary& MonteCarloSummary::at(double sweep_value, Strategy strategy) const {
    for (const PointSummary& p : points)
        if (p.sweep_value == sweep_value && p.strategy == strategy) return p;
    throw InvalidState("no summary row for the requested sweep value and strategy");
}

MonteCarloSummary run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    return run_experiment(config, build_codebook(config), options);
}

MonteCarloSummary run_experiment(const ExperimentConfig& config, const Codebook& codebook,
                                 const RunOptions& options) {
    config.validate();
    if (codebook.length() != config.channel.spreading_length)
        throw ConfigError("codebook length does not match channel.spreading_length");

    const std::size_t n_points = config.sweep_values.size();
    const std::size_t n_jobs = n_points * config.n_drops;
    std::vector<DropResult> results(n_jobs);

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t j = next.fetch_add(1);
            if (j >= n_jobs) return;
            try {
                results[j] = run_drop(config, codebook, j / config.n_drops, j % config.n_drops);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(n_jobs);
                return;
            }
            const std::size_t d = done.fetch_add(1) + 1;
            if (options.progress) {
                std::lock_guard lock(progress_mutex);
                options.progress(d, n_jobs);
            }
        }
    };

    const unsigned n_threads = std::max(1u, options.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    }
    if (first_error) std::rethrow_exception(first_error);

    MonteCarloSummary s;
    s.label = config.label;
    s.sweep_variable = config.sweep_variable;
    s.n_total_drops = n_jobs;
    for (std::size_t p = 0; p < n_points; ++p) {
        const std::size_t n_ues = config.channel_at(config.sweep_values[p]).n_ues;
        for (std::size_t si = 0; si < config.strategies.size(); ++si) {
            std::vector<double> detected, rates;
            std::size_t solved = 0;
            for (std::size_t d = 0; d < config.n_drops; ++d) {
                const DropResult& r = results[p * config.n_drops + d];
                if (r.failed) continue;
                const StrategyResult& sr = r.strategies[si];
                detected.push_back(static_cast<double>(sr.detected));
                rates.push_back(sr.sum_rate);
                if (sr.provenance == Provenance::sdp) ++solved;
            }
            PointSummary ps;
            ps.sweep_value = config.sweep_values[p];
            ps.strategy = config.strategies[si];
            ps.n_ues = n_ues;
            ps.n_drops = detected.size();
            std::tie(ps.mean_detected, ps.ci_halfwidth_95) = mean_and_ci95(detected);
            ps.mean_sum_rate = mean_and_ci95(rates).first;
            ps.sdp_solved_rate =
                ps.n_drops == 0 ? 0.0 : static_cast<double>(solved) / static_cast<double>(ps.n_drops);
            s.points.push_back(ps);
        }
    }
    for (const DropResult& r : results) s.n_failed_drops += r.failed ? 1 : 0;
    if (options.keep_drops) s.drops = std::move(results);
    return s;
}

void write_csv(const MonteCarloSummary& s, std::ostream& out) {
    out << "sweep_variable,sweep_value,strategy,mean_detected,ci_lo,ci_hi,n_drops,sdp_solved_rate,"
           "mean_sum_rate_bps_hz\n";
    for (const PointSummary& p : s.points) {
        out << to_string(s.sweep_variable) << ',' << fmt(p.sweep_value) << ',' << to_string(p.strategy)
            << ',' << fmt(p.mean_detected) << ',' << fmt(p.ci_lo()) << ',' << fmt(p.ci_hi()) << ','
            << fmt(p.n_drops) << ',' << fmt(p.sdp_solved_rate) << ',' << fmt(p.mean_sum_rate) << '\n';
    }
}

void emit_csv(const MonteCarloSummary& summary, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_csv(summary, out);
    if (!out) throw IoError("write to " + path.string() + " failed");
}

void write_drop_csv(const MonteCarloSummary& s, std::ostream& out) {
    out << "sweep_value,drop_index,n_ues,strategy,detected,sum_rate_bps_hz,provenance,sdp_iterations,"
           "sdp_min_normalized_slack,sdp_min_eig,error\n";
    for (const DropResult& d : s.drops) {
        if (d.failed) {
            out << fmt(d.sweep_value) << ',' << d.drop_index << ',' << d.n_ues << ",,,,,,,,\"";
            for (const char c : d.error) out << (c == '"' ? "\"\"" : std::string(1, c));
            out << "\"\n";
            continue;
        }
        for (const StrategyResult& r : d.strategies) {
            out << fmt(d.sweep_value) << ',' << d.drop_index << ',' << d.n_ues << ','
                << to_string(r.strategy) << ',' << r.detected << ',' << fmt(r.sum_rate) << ',';
            if (r.provenance) {
                out << to_string(*r.provenance) << ',' << r.sdp_iterations << ','
                    << fmt(r.sdp_min_normalized_slack) << ',' << fmt(r.sdp_min_eig);
            } else {
                out << ",,,";
            }
            out << ",\n";
        }
    }
}

}  // namespace risnoma
