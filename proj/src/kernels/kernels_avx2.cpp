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

// Built with -mavx2 -mfma. Only include ODR-safe headers here: anything with
// inline functions would be emitted with AVX2 encodings and could be picked
// by the linker for callers running on older CPUs.

#include <immintrin.h>

#include "risnoma/kernel_table.hpp"

#if defined(__AVX2__) && defined(__FMA__)

namespace risnoma::kernels {
namespace {

// One __m256d holds two complex doubles: [re0, im0, re1, im1].

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// (even lanes) - (odd lanes)
inline double halt(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_sub_sd(s, _mm_unpackhi_pd(s, s)));
}

// Accumulates prod = a .* b and cross = a .* swap(b) over the full vector.
// From those, conj(a).b = (sum prod, alt cross) and a.b = (alt prod, sum cross).
inline void accumulate_products(const double* a, const double* b, std::size_t n,
                                __m256d& prod, __m256d& cross, double tail[4]) {
    __m256d p0 = _mm256_setzero_pd(), p1 = _mm256_setzero_pd();
    __m256d c0 = _mm256_setzero_pd(), c1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a0 = _mm256_loadu_pd(a + 2 * i);
        const __m256d a1 = _mm256_loadu_pd(a + 2 * i + 4);
        const __m256d b0 = _mm256_loadu_pd(b + 2 * i);
        const __m256d b1 = _mm256_loadu_pd(b + 2 * i + 4);
        p0 = _mm256_fmadd_pd(a0, b0, p0);
        p1 = _mm256_fmadd_pd(a1, b1, p1);
        c0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), c0);
        c1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0x5), c1);
    }
    for (; i + 2 <= n; i += 2) {
        const __m256d a0 = _mm256_loadu_pd(a + 2 * i);
        const __m256d b0 = _mm256_loadu_pd(b + 2 * i);
        p0 = _mm256_fmadd_pd(a0, b0, p0);
        c0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0x5), c0);
    }
    prod = _mm256_add_pd(p0, p1);
    cross = _mm256_add_pd(c0, c1);
    // tail: ar*br, ai*bi, ar*bi, ai*br
    tail[0] = tail[1] = tail[2] = tail[3] = 0.0;
    if (i < n) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        tail[0] = ar * br;
        tail[1] = ai * bi;
        tail[2] = ar * bi;
        tail[3] = ai * br;
    }
}

c64 dotc_avx2(const double* a, const double* b, std::size_t n) {
    __m256d prod, cross;
    double t[4];
    accumulate_products(a, b, n, prod, cross, t);
    return {hsum(prod) + t[0] + t[1], halt(cross) + t[2] - t[3]};
}

c64 dotu_avx2(const double* a, const double* b, std::size_t n) {
    __m256d prod, cross;
    double t[4];
    accumulate_products(a, b, n, prod, cross, t);
    return {halt(prod) + t[0] - t[1], hsum(cross) + t[2] + t[3]};
}

double inner_re_avx2(const double* a, const double* b, std::size_t n) {
    const std::size_t len = 2 * n;
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= len; i += 8) {
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
        s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
    }
    for (; i + 4 <= len; i += 4)
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    double acc = hsum(_mm256_add_pd(s0, s1));
    for (; i < len; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_avx2(c64 alpha, const double* x, double* y, std::size_t n) {
    const __m256d ar = _mm256_set1_pd(alpha.re);
    const __m256d ai = _mm256_setr_pd(-alpha.im, alpha.im, -alpha.im, alpha.im);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * i);
        __m256d yv = _mm256_loadu_pd(y + 2 * i);
        yv = _mm256_fmadd_pd(xv, ar, yv);
        yv = _mm256_fmadd_pd(_mm256_permute_pd(xv, 0x5), ai, yv);
        _mm256_storeu_pd(y + 2 * i, yv);
    }
    if (i < n) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i] += alpha.re * xr - alpha.im * xi;
        y[2 * i + 1] += alpha.re * xi + alpha.im * xr;
    }
}

double norm_sq_avx2(const double* x, std::size_t n) { return inner_re_avx2(x, x, n); }

constexpr KernelTable kAvx2{dotc_avx2, dotu_avx2, inner_re_avx2, axpy_avx2, norm_sq_avx2};

}  // namespace

namespace detail {
const KernelTable& avx2_table() noexcept { return kAvx2; }
}  // namespace detail

}  // namespace risnoma::kernels

#endif
