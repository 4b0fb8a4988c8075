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

#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "risnoma/kernels.hpp"

namespace k = risnoma::kernels;
using cd = std::complex<double>;

namespace {

std::vector<cd> make(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    return oracle::random_vector(g, n);
}

const double* raw(const std::vector<cd>& v) { return reinterpret_cast<const double*>(v.data()); }
double* raw(std::vector<cd>& v) { return reinterpret_cast<double*>(v.data()); }

cd as_cd(risnoma::kernels::c64 c) { return {c.re, c.im}; }

// Lengths around every unroll boundary of the vector paths.
const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 15, 16, 17, 31, 32, 33, 64, 127, 128};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("scalar reference kernels match naive complex loops") {
    const auto& t = k::scalar_table();
    for (const std::size_t n : kLengths) {
        CAPTURE(n);
        const auto a = make(n, 1 + n), b = make(n, 100 + n);
        cd dc = 0.0, du = 0.0;
        double ir = 0.0, nsq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dc += std::conj(a[i]) * b[i];
            du += a[i] * b[i];
            ir += (std::conj(a[i]) * b[i]).real();
            nsq += std::norm(a[i]);
        }
        CHECK(std::abs(as_cd(t.dotc(raw(a), raw(b), n)) - dc) <= 1e-12 * (1.0 + std::abs(dc)));
        CHECK(std::abs(as_cd(t.dotu(raw(a), raw(b), n)) - du) <= 1e-12 * (1.0 + std::abs(du)));
        CHECK(t.inner_re(raw(a), raw(b), n) == doctest::Approx(ir).epsilon(1e-12));
        CHECK(t.norm_sq(raw(a), n) == doctest::Approx(nsq).epsilon(1e-12));

        const cd alpha(0.3, -1.7);
        auto y = b;
        t.axpy({alpha.real(), alpha.imag()}, raw(a), raw(y), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y[i] - (b[i] + alpha * a[i])) <= 1e-14);
    }
}

TEST_CASE("every compiled variant agrees with the scalar reference") {
    const auto& ref = k::scalar_table();
    for (const k::Isa isa : {k::Isa::scalar, k::Isa::avx2}) {
        const auto& t = k::table_for(isa);
        CAPTURE(k::isa_name(isa));
        for (const std::size_t n : kLengths) {
            CAPTURE(n);
            const auto a = make(n, 7 + n), b = make(n, 900 + n);
            const double scale = 1.0 + oracle::vnorm(a) * oracle::vnorm(b);
            CHECK(std::abs(as_cd(t.dotc(raw(a), raw(b), n)) - as_cd(ref.dotc(raw(a), raw(b), n))) <=
                  1e-13 * scale);
            CHECK(std::abs(as_cd(t.dotu(raw(a), raw(b), n)) - as_cd(ref.dotu(raw(a), raw(b), n))) <=
                  1e-13 * scale);
            CHECK(std::abs(t.inner_re(raw(a), raw(b), n) - ref.inner_re(raw(a), raw(b), n)) <=
                  1e-13 * scale);
            CHECK(std::abs(t.norm_sq(raw(a), n) - ref.norm_sq(raw(a), n)) <= 1e-13 * scale);

            auto y1 = b, y2 = b;
            t.axpy({-0.25, 2.0}, raw(a), raw(y1), n);
            ref.axpy({-0.25, 2.0}, raw(a), raw(y2), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-14 * (1.0 + std::abs(y2[i])));
        }
    }
}

TEST_CASE("dispatch honours force_isa and the span wrappers route through it") {
    const k::Isa detected = k::detect_isa();
    const auto a = make(19, 3), b = make(19, 4);
    k::force_isa(k::Isa::scalar);
    CHECK(k::active_isa() == k::Isa::scalar);
    const cd s = k::dotc(a, b);
    k::force_isa(detected);
    CHECK(k::active_isa() == detected);
    const cd v = k::dotc(a, b);
    CHECK(std::abs(s - v) <= 1e-13 * (1.0 + std::abs(s)));
    CHECK(std::abs(s - oracle::vdot(a, b)) <= 1e-12 * (1.0 + std::abs(s)));
}

TEST_CASE("table_for falls back to scalar when a variant is unavailable") {
    if (k::detect_isa() == k::Isa::scalar) {
        CHECK(&k::table_for(k::Isa::avx2) == &k::scalar_table());
    } else {
        CHECK(&k::table_for(k::Isa::avx2) != &k::scalar_table());
    }
    CHECK(&k::table_for(k::Isa::scalar) == &k::scalar_table());
}

}  // TEST_SUITE
