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

#include <cmath>
#include <limits>
#include <numbers>

#include "tqs/density.hpp"
#include "tqs/evolution.hpp"
#include "tqs/linalg.hpp"
#include "tqs/model.hpp"

/// l1 norm of coherence, C(rho) = sum_{i != j} |rho_ij|, measured in the
/// computational basis.
namespace tqs::coherence {

using evolution::BellLabel;
using model::CircuitParams;

/// Largest off-diagonal modulus still counted as "diagonal".
inline constexpr double kDiagonalTolerance = 1e-12;

inline double l1_coherence(const DensityMatrix& rho) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            if (i != j) {
                acc += std::abs(rho(i, j));
            }
        }
    }
    return acc;
}

/// Validates first; throws InvariantViolation naming the failed property.
inline double l1_coherence(const linalg::Matrix& rho) { return l1_coherence(DensityMatrix::certify(rho)); }

inline bool is_incoherent(const DensityMatrix& rho) {
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        for (std::size_t j = 0; j < rho.dim(); ++j) {
            if (i != j && std::abs(rho(i, j)) > kDiagonalTolerance) {
                return false;
            }
        }
    }
    return true;
}

/// Closed-form C(t). Phi-/Psi- are constant 1; Phi+/Psi+ share
///
///   1 + 16 sqrt( E_J^2 sin^2(t sqrt(D)/4) (8 E_J^2 (cos(t sqrt(D)/2) + 1) + hbar^2 E_m^2) / D^2 )
///
/// with D = 16 E_J^2 + hbar^2 E_m^2. D = 0 means E_J = 0, where the sine
/// factor kills the radicand, so the value is 1.
inline double closed_form_coherence(BellLabel label, const CircuitParams& p, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("closed_form_coherence: time must be finite");
    }
    if (evolution::is_stationary(label)) {
        return 1.0;
    }
    const double d = p.discriminant();
    if (d == 0.0) {
        return 1.0;
    }
    const double root_d = std::sqrt(d);
    const double e_j2 = p.e_j() * p.e_j();
    const double s = std::sin(0.25 * t * root_d);
    const double radicand =
        e_j2 * s * s * (8.0 * e_j2 * (std::cos(0.5 * t * root_d) + 1.0) + p.hbar() * p.hbar() * p.e_m() * p.e_m()) /
        (d * d);
    return 1.0 + 16.0 * std::sqrt(radicand);
}

struct CoherenceExtrema {
    double max_value;
    double t_of_first_max;
    double min_value;
    double t_of_first_min;
    double period;  ///< pi / Omega_1, +inf for constant trajectories
    bool constant;  ///< C(t) does not depend on t
};

/// Analytic extrema of the closed-form trajectory over one period.
///
/// Writing s = sin^2(Omega_1 t), the radicand is E_J^2 s (16 E_J^2 (1 - s) +
/// hbar^2 E_m^2) / D^2, a downward parabola in s with vertex s* = D / (32 E_J^2).
/// If s* <= 1 (hbar^2 E_m^2 <= 16 E_J^2) the vertex is reachable and C peaks at
/// exactly 3; otherwise the peak sits at s = 1 with value
/// 1 + 16 hbar |E_J E_m| / D. The minimum 1 is reached at s = 0, first at
/// t = pi / Omega_1.
inline CoherenceExtrema coherence_extrema(BellLabel label, const CircuitParams& p) {
    const auto freq = model::frequency_scales(p);
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (evolution::is_stationary(label) || !freq.period_fast) {
        return {1.0, 0.0, 1.0, 0.0, inf, true};
    }
    const double period = *freq.period_fast;
    if (p.e_j() == 0.0) {
        return {1.0, 0.0, 1.0, 0.0, period, true};
    }
    const double omega = freq.omega_fast;
    const double d = p.discriminant();
    const double s_star = d / (32.0 * p.e_j() * p.e_j());

    CoherenceExtrema ex{};
    ex.period = period;
    ex.min_value = 1.0;
    ex.t_of_first_min = period;
    ex.constant = false;
    if (s_star <= 1.0) {
        ex.max_value = 3.0;
        ex.t_of_first_max = std::asin(std::sqrt(s_star)) / omega;
    } else {
        ex.max_value = 1.0 + 16.0 * p.hbar() * std::abs(p.e_j() * p.e_m()) / d;
        ex.t_of_first_max = (std::numbers::pi / 2.0) / omega;
    }
    return ex;
}

}  // namespace tqs::coherence
