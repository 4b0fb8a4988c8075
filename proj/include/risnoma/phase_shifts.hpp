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

#include <span>
#include <vector>

#include "risnoma/numerics.hpp"

namespace risnoma {

// RIS configuration w = diag(Phi^H): one unit-modulus coefficient per element.
class PhaseShifts {
public:
    // Throws DimensionMismatch when empty and InvalidState when any entry is
    // off the unit circle by more than `tol`.
    explicit PhaseShifts(CVector w, double tol = 1e-12);

    // exp(j * phase_n)
    static PhaseShifts from_phases(std::span<const double> phases);

    // Entry n set to exp(j * arg(v_n)); exactly-zero entries map to phase 0.
    static PhaseShifts from_phases_of(std::span<const cdouble> v);

    std::size_t size() const noexcept { return w_.size(); }
    std::span<const cdouble> values() const noexcept { return w_; }
    cdouble operator[](std::size_t n) const noexcept { return w_[n]; }

    // Copy rotated by a global phase exp(j * theta).
    PhaseShifts rotated(double theta) const;

    friend bool operator==(const PhaseShifts&, const PhaseShifts&) = default;

private:
    CVector w_;
};

}  // namespace risnoma
