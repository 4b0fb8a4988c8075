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

#include "risnoma/kernels.hpp"

namespace risnoma::kernels {
namespace {

c64 dotc_scalar(const double* a, const double* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

c64 dotu_scalar(const double* a, const double* b, std::size_t n) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[2 * i], ai = a[2 * i + 1];
        const double br = b[2 * i], bi = b[2 * i + 1];
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

double inner_re_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy_scalar(c64 alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i] += alpha.re * xr - alpha.im * xi;
        y[2 * i + 1] += alpha.re * xi + alpha.im * xr;
    }
}

double norm_sq_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < 2 * n; ++i) acc += x[i] * x[i];
    return acc;
}

constexpr KernelTable kScalar{dotc_scalar, dotu_scalar, inner_re_scalar, axpy_scalar,
                              norm_sq_scalar};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace risnoma::kernels
