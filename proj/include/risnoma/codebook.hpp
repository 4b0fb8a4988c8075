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
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "risnoma/numerics.hpp"
#include "risnoma/rng.hpp"

namespace risnoma {

// M unit-norm spreading signatures of length L.
class Codebook {
public:
    // Validates ||s_m|| == 1 (within 1e-12) and computes the maximum
    // cross-correlation. Throws InvalidDimensions.
    static Codebook from_signatures(std::size_t length, std::vector<CVector> signatures);

    std::size_t length() const noexcept { return length_; }
    std::size_t size() const noexcept { return signatures_.size(); }
    const CVector& signature(std::size_t m) const { return signatures_.at(m); }
    const std::vector<CVector>& signatures() const noexcept { return signatures_; }
    // max over m != m' of |s_m^H s_m'|; 0 for a single signature
    double max_xcorr() const noexcept { return max_xcorr_; }

private:
    std::size_t length_ = 0;
    std::vector<CVector> signatures_;
    double max_xcorr_ = 0.0;
};

double max_cross_correlation(const std::vector<CVector>& signatures);

// Welch lower bound on the maximum cross-correlation of m unit vectors in
// dimension l: sqrt((m - l) / (l (m - 1))), and 0 when m == l.
// Throws InvalidDimensions for m < l or l == 0.
double welch_bound(std::size_t l, std::size_t m);

// Complex Grassmannian packing by alternating projection on the Gram matrix:
// clip off-diagonal magnitudes to the Welch bound, then project onto the
// tight-frame spectral set (rank l, eigenvalues m / l) and renormalize the
// columns. The best iterate is kept. Throws DesignFailure if the result
// still has max_xcorr > 0.9.
Codebook grassmannian_design(std::size_t l, std::size_t m, Rng& rng, int iters = 2000);

// Identity codebook: the L standard basis vectors.
Codebook oma_codebook(std::size_t l);

// UE i gets signature i mod M.
std::vector<std::size_t> assign_signatures(std::size_t k, const Codebook& codebook);

// CSV layout: 2L rows by M columns. Rows 0..L-1 hold the real parts and
// rows L..2L-1 the imaginary parts; column m is signature m.
void write_codebook_csv(const Codebook& codebook, std::ostream& out);
void write_codebook_csv(const Codebook& codebook, const std::filesystem::path& path);
Codebook read_codebook_csv(std::istream& in);
Codebook read_codebook_csv(const std::filesystem::path& path);

}  // namespace risnoma
