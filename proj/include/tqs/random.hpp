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

#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "tqs/model.hpp"

namespace tqs {

/// Portable seeded draws. std::mt19937_64 output is fixed by the standard;
/// the standard distributions are not, so the mapping to doubles is done here:
///   uniform()  = (x >> 11) * 2^-53            in [0, 1)
///   pick(n)    = x % n
class DrawSource {
public:
    explicit DrawSource(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    std::uint64_t pick(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

/// One parameter/time sample for the cross-validation sweeps.
struct ParameterDraw {
    model::CircuitParams params;
    double t;
};

/// e_j, e_m uniform in [-5, 5], hbar from {0.5, 1, 2}, t uniform in [0, 50],
/// drawn in that order.
inline ParameterDraw draw_parameters(DrawSource& src) {
    static constexpr std::array<double, 3> kHbarChoices = {0.5, 1.0, 2.0};
    const double e_j = src.uniform(-5.0, 5.0);
    const double e_m = src.uniform(-5.0, 5.0);
    const double hbar = kHbarChoices[src.pick(kHbarChoices.size())];
    const double t = src.uniform(0.0, 50.0);
    return {model::CircuitParams(e_j, e_m, hbar), t};
}

}  // namespace tqs
