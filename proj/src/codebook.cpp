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

#include "risnoma/codebook.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "risnoma/errors.hpp"
#include "risnoma/kernels.hpp"

namespace risnoma {
namespace {

void normalize_columns(std::vector<CVector>& cols) {
    for (auto& c : cols) {
        const double n = norm(c);
        if (n > 0.0)
            for (auto& x : c) x /= n;
    }
}

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

}  // namespace

Codebook Codebook::from_signatures(std::size_t length, std::vector<CVector> signatures) {
    if (length == 0 || signatures.empty())
        throw InvalidDimensions("Codebook: length and size must be >= 1");
    for (std::size_t m = 0; m < signatures.size(); ++m) {
        if (signatures[m].size() != length)
            throw InvalidDimensions("Codebook: signature " + std::to_string(m) + " has wrong length");
        if (std::abs(norm(signatures[m]) - 1.0) > 1e-12)
            throw InvalidDimensions("Codebook: signature " + std::to_string(m) + " is not unit-norm");
    }
    Codebook cb;
    cb.length_ = length;
    cb.max_xcorr_ = max_cross_correlation(signatures);
    cb.signatures_ = std::move(signatures);
    return cb;
}

double max_cross_correlation(const std::vector<CVector>& signatures) {
    double mx = 0.0;
    for (std::size_t i = 0; i < signatures.size(); ++i)
        for (std::size_t j = i + 1; j < signatures.size(); ++j)
            mx = std::max(mx, std::abs(kernels::dotc(signatures[i], signatures[j])));
    return mx;
}

double welch_bound(std::size_t l, std::size_t m) {
    if (l == 0 || m < l)
        throw InvalidDimensions("welch_bound: requires m >= l >= 1 (got l=" + std::to_string(l) +
                                ", m=" + std::to_string(m) + ")");
    if (m == l) return 0.0;
    const double ld = static_cast<double>(l), md = static_cast<double>(m);
    return std::sqrt((md - ld) / (ld * (md - 1.0)));
}

Codebook grassmannian_design(std::size_t l, std::size_t m, Rng& rng, int iters) {
    if (iters < 1) throw InvalidDimensions("grassmannian_design: iters must be >= 1");
    const double mu = welch_bound(l, m);

    std::normal_distribution<double> g;
    std::vector<CVector> s(m, CVector(l));
    for (auto& c : s)
        for (auto& x : c) x = {g(rng), g(rng)};
    normalize_columns(s);

    std::vector<CVector> best = s;
    double best_xcorr = max_cross_correlation(s);
    const double frame_gain = std::sqrt(static_cast<double>(m) / static_cast<double>(l));

    for (int it = 0; it < iters && best_xcorr > mu + 1e-12; ++it) {
        // Gram matrix with clipped off-diagonals and unit diagonal.
        HermitianMatrix gram(m);
        for (std::size_t i = 0; i < m; ++i) {
            gram.set_diagonal(i, 1.0);
            for (std::size_t j = i + 1; j < m; ++j) {
                cdouble v = kernels::dotc(s[i], s[j]);
                const double a = std::abs(v);
                if (a > mu) v *= mu / a;
                gram.set(i, j, v);
            }
        }
        // Nearest tight frame: top-l eigenvectors with eigenvalues m / l.
        const HermitianEigen eig = hermitian_eigen(gram);
        for (std::size_t r = 0; r < l; ++r) {
            const CVector& u = eig.vectors[m - 1 - r];
            for (std::size_t j = 0; j < m; ++j) s[j][r] = frame_gain * std::conj(u[j]);
        }
        normalize_columns(s);

        const double xc = max_cross_correlation(s);
        if (xc < best_xcorr) {
            best_xcorr = xc;
            best = s;
        }
    }
    if (best_xcorr > 0.9)
        throw DesignFailure("grassmannian_design: max cross-correlation " +
                            std::to_string(best_xcorr) + " after " + std::to_string(iters) +
                            " iterations");
    // Exact renormalization so from_signatures' 1e-12 check holds.
    normalize_columns(best);
    return Codebook::from_signatures(l, std::move(best));
}

Codebook oma_codebook(std::size_t l) {
    if (l == 0) throw InvalidDimensions("oma_codebook: length must be >= 1");
    std::vector<CVector> s(l, CVector(l));
    for (std::size_t i = 0; i < l; ++i) s[i][i] = 1.0;
    return Codebook::from_signatures(l, std::move(s));
}

std::vector<std::size_t> assign_signatures(std::size_t k, const Codebook& codebook) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i % codebook.size();
    return idx;
}

void write_codebook_csv(const Codebook& codebook, std::ostream& out) {
    const std::size_t l = codebook.length();
    for (std::size_t row = 0; row < 2 * l; ++row) {
        for (std::size_t m = 0; m < codebook.size(); ++m) {
            const cdouble v = codebook.signature(m)[row % l];
            if (m) out << ',';
            out << format_double(row < l ? v.real() : v.imag());
        }
        out << '\n';
    }
}

void write_codebook_csv(const Codebook& codebook, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_codebook_csv(codebook, out);
    if (!out) throw IoError("write failed: " + path.string());
}

Codebook read_codebook_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            double v = 0.0;
            const char* first = cell.data();
            while (first < cell.data() + cell.size() && *first == ' ') ++first;
            const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), v);
            if (ec != std::errc()) throw IoError("codebook csv: bad number '" + cell + "'");
            row.push_back(v);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.size() % 2 != 0)
        throw IoError("codebook csv: expected an even, non-zero number of rows");
    const std::size_t l = rows.size() / 2;
    const std::size_t m = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != m) throw IoError("codebook csv: ragged rows");
    std::vector<CVector> sigs(m, CVector(l));
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < l; ++i) sigs[j][i] = {rows[i][j], rows[l + i][j]};
    return Codebook::from_signatures(l, std::move(sigs));
}

Codebook read_codebook_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return read_codebook_csv(in);
}

}  // namespace risnoma
