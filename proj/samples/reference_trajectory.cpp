// Copyright 2026 The tqs-coherence Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// C(t) for phi+ at E_J = 0.5, E_m = 1.5, hbar = 1, with its extrema.

#include <cstdio>

#include "tqs/coherence.hpp"
#include "tqs/scan.hpp"

int main() {
    using tqs::evolution::BellLabel;
    const auto p = tqs::model::CircuitParams::reference();
    const auto series = tqs::scan::time_series(BellLabel::kPhiPlus, p, tqs::scan::TimeGrid(0.0, 10.0, 101));
    for (std::size_t k = 0; k < series.times.size(); k += 10) {
        std::printf("t=%5.2f  C=%.9f  (numeric %.9f)\n", series.times[k], series.closed_form[k], series.numeric[k]);
    }
    const auto ex = tqs::coherence::coherence_extrema(BellLabel::kPhiPlus, p);
    std::printf("max %.12f at t=%.9f, min %.12f at t=%.9f, period %.9f\n", ex.max_value, ex.t_of_first_max,
                ex.min_value, ex.t_of_first_min, ex.period);
    std::printf("largest closed-form/numeric gap: %.3e\n", series.max_abs_gap);
    return 0;
}
