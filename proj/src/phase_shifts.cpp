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

#include "risnoma/phase_shifts.hpp"

#include <cmath>
#include <string>

#include "risnoma/errors.hpp"

namespace risnoma {

PhaseShifts::PhaseShifts(CVector w, double tol) : w_(std::move(w)) {
    if (w_.empty()) throw DimensionMismatch("PhaseShifts: empty vector");
    for (std::size_t n = 0; n < w_.size(); ++n)
        if (!(std::abs(std::abs(w_[n]) - 1.0) <= tol))
            throw InvalidState("PhaseShifts: entry " + std::to_string(n) + " is not unit-modulus");
}

PhaseShifts PhaseShifts::from_phases(std::span<const double> phases) {
    CVector w(phases.size());
    for (std::size_t n = 0; n < phases.size(); ++n) w[n] = std::polar(1.0, phases[n]);
    return PhaseShifts(std::move(w));
}

PhaseShifts PhaseShifts::from_phases_of(std::span<const cdouble> v) {
    CVector w(v.size());
    for (std::size_t n = 0; n < v.size(); ++n)
        w[n] = v[n] == cdouble(0.0) ? cdouble(1.0) : std::polar(1.0, std::arg(v[n]));
    return PhaseShifts(std::move(w));
}

PhaseShifts PhaseShifts::rotated(double theta) const {
    const cdouble r = std::polar(1.0, theta);
    CVector w(w_);
    for (auto& x : w) x = (x * r) / std::abs(x * r);
    return PhaseShifts(std::move(w));
}

}  // namespace risnoma
