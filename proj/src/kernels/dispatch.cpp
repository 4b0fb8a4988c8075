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

#include <atomic>
#include <cassert>

#include "risnoma/kernels.hpp"

namespace risnoma::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(RISNOMA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::atomic<const KernelTable*>& active_slot() noexcept {
    static std::atomic<const KernelTable*> slot{&table_for(detect_isa())};
    return slot;
}

const KernelTable& active() noexcept { return *active_slot().load(std::memory_order_relaxed); }

const double* raw(std::span<const cd> v) noexcept { return reinterpret_cast<const double*>(v.data()); }
double* raw(std::span<cd> v) noexcept { return reinterpret_cast<double*>(v.data()); }

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

Isa detect_isa() noexcept {
    static const bool has_avx2 = cpu_has_avx2();
    return has_avx2 ? Isa::avx2 : Isa::scalar;
}

const KernelTable& table_for(Isa isa) noexcept {
#if defined(RISNOMA_HAVE_AVX2)
    if (isa == Isa::avx2 && detect_isa() == Isa::avx2) return detail::avx2_table();
#else
    (void)isa;
#endif
    return scalar_table();
}

Isa active_isa() noexcept {
    return &active() == &scalar_table() ? Isa::scalar : Isa::avx2;
}

void force_isa(Isa isa) noexcept { active_slot().store(&table_for(isa), std::memory_order_relaxed); }

cd dotc(std::span<const cd> a, std::span<const cd> b) {
    assert(a.size() == b.size());
    const c64 r = active().dotc(raw(a), raw(b), a.size());
    return {r.re, r.im};
}

cd dotu(std::span<const cd> a, std::span<const cd> b) {
    assert(a.size() == b.size());
    const c64 r = active().dotu(raw(a), raw(b), a.size());
    return {r.re, r.im};
}

double inner_re(std::span<const cd> a, std::span<const cd> b) {
    assert(a.size() == b.size());
    return active().inner_re(raw(a), raw(b), a.size());
}

void axpy(cd alpha, std::span<const cd> x, std::span<cd> y) {
    assert(x.size() == y.size());
    active().axpy({alpha.real(), alpha.imag()}, raw(x), raw(y), x.size());
}

double norm_sq(std::span<const cd> x) { return active().norm_sq(raw(x), x.size()); }

}  // namespace risnoma::kernels
