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

// Function table shared by the scalar and SIMD kernel translation units.
// Deliberately free of standard-library inline code: the SIMD units are built
// with extra target flags and must not emit ODR-shared symbols.

namespace risnoma::kernels {

struct c64 {
    double re;
    double im;
};

struct KernelTable {
    // sum_i conj(a_i) * b_i
    c64 (*dotc)(const double* a, const double* b, std::size_t n);
    // sum_i a_i * b_i
    c64 (*dotu)(const double* a, const double* b, std::size_t n);
    // Re sum_i conj(a_i) * b_i; the Frobenius inner product for Hermitian storage
    double (*inner_re)(const double* a, const double* b, std::size_t n);
    // y_i += alpha * x_i
    void (*axpy)(c64 alpha, const double* x, double* y, std::size_t n);
    // sum_i |x_i|^2
    double (*norm_sq)(const double* x, std::size_t n);
};

namespace detail {
#if defined(RISNOMA_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
}  // namespace detail

}  // namespace risnoma::kernels
