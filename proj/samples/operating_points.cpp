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

// Operating points for each Bell state, then a small cross-validation run.

#include <iostream>

#include "tqs/io.hpp"
#include "tqs/scan.hpp"

int main() {
    using namespace tqs;
    const auto p = model::CircuitParams::reference();
    for (auto label : evolution::kAllBellLabels) {
        const auto op = scan::find_operating_point(label, p, {0.0, 10.0}, scan::Objective::kMaximize);
        io::write_operating_point_text(std::cout, op);
        std::cout << '\n';
    }
    const auto frozen =
        scan::find_operating_point(evolution::BellLabel::kPhiPlus, {0.0, 1.5, 1.0}, {0.0, 10.0}, scan::Objective::kStabilize);
    io::write_operating_point_text(std::cout, frozen);
    std::cout << '\n';
    io::write_report_text(std::cout, scan::cross_validate(200, 42));
    return 0;
}
