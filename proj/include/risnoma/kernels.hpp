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

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

#include "risnoma/kernel_table.hpp"

// Complex double-precision inner-loop kernels.
//
// Every kernel has a portable scalar reference and, on x86-64 builds, an
// AVX2/FMA variant living in its own translation unit. The variant is picked
// once at runtime from the CPU feature flags. Both variants operate on
// interleaved (re, im) double arrays, which is the layout std::complex<double>
// guarantees for contiguous arrays.

namespace risnoma::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

const KernelTable& scalar_table() noexcept;

// Variant table for `isa`. Falls back to the scalar table when the variant
// was not compiled in or the running CPU lacks the instructions.
const KernelTable& table_for(Isa isa) noexcept;

// Best variant supported by both the build and the running CPU.
Isa detect_isa() noexcept;

// Variant used by the free functions below.
Isa active_isa() noexcept;

// Overrides runtime selection (benchmarks, equivalence tests). Not meant to
// be called while other threads are running kernels.
void force_isa(Isa isa) noexcept;

using cd = std::complex<double>;

cd dotc(std::span<const cd> a, std::span<const cd> b);
cd dotu(std::span<const cd> a, std::span<const cd> b);
double inner_re(std::span<const cd> a, std::span<const cd> b);
void axpy(cd alpha, std::span<const cd> x, std::span<cd> y);
double norm_sq(std::span<const cd> x);

}  // namespace risnoma::kernels
