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
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "tqs/density.hpp"
#include "tqs/errors.hpp"
#include "tqs/linalg.hpp"
#include "tqs/model.hpp"

namespace tqs::evolution {

using linalg::Complex;
using linalg::Matrix;
using linalg::Vector;
using model::CircuitParams;

enum class BellLabel { kPhiPlus, kPsiPlus, kPhiMinus, kPsiMinus };

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {BellLabel::kPhiPlus, BellLabel::kPsiPlus,
                                                            BellLabel::kPhiMinus, BellLabel::kPsiMinus};

/// Short names used on the command line and in output files.
inline std::string_view to_string(BellLabel label) {
    switch (label) {
        case BellLabel::kPhiPlus:
            return "phi+";
        case BellLabel::kPsiPlus:
            return "psi+";
        case BellLabel::kPhiMinus:
            return "phi-";
        case BellLabel::kPsiMinus:
            return "psi-";
    }
    return "?";
}

inline std::optional<BellLabel> parse_bell_label(std::string_view name) {
    for (BellLabel label : kAllBellLabels) {
        if (to_string(label) == name) {
            return label;
        }
    }
    return std::nullopt;
}

/// Phi-/Psi- are eigenstates of H and never change up to a phase.
inline bool is_stationary(BellLabel label) { return label == BellLabel::kPhiMinus || label == BellLabel::kPsiMinus; }

inline constexpr double kStateNormTolerance = 1e-10;
inline constexpr double kEvolveNormDrift = 1e-8;
inline constexpr double kUnitarityTolerance = 1e-10;
inline constexpr double kDeterminantTolerance = 1e-8;

class UnitaryMatrix;

/// Normalized two-qubit pure state in the computational basis.
class StateVector {
public:
    explicit StateVector(Vector amplitudes) : StateVector(std::move(amplitudes), kStateNormTolerance) {}

    [[nodiscard]] const Vector& amplitudes() const { return amplitudes_; }
    [[nodiscard]] const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

private:
    friend StateVector evolve(const StateVector& state, const UnitaryMatrix& u);

    StateVector(Vector amplitudes, double tolerance) : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.dim() != 4) {
            throw std::invalid_argument("StateVector: expected 4 amplitudes");
        }
        const double drift = std::abs(amplitudes_.norm() - 1.0);
        if (drift > tolerance) {
            throw InvariantViolation("StateVector: norm deviates from 1 by " + std::to_string(drift));
        }
    }

    Vector amplitudes_;
};

/// U(t) = exp(-i H t / hbar), checked for unitarity on construction.
class UnitaryMatrix {
public:
    UnitaryMatrix(Matrix matrix, double time, CircuitParams params)
        : matrix_(std::move(matrix)), time_(time), params_(params) {
        if (matrix_.dim() != 4) {
            throw std::invalid_argument("UnitaryMatrix: expected a 4x4 matrix");
        }
        const double defect = linalg::unitarity_defect(matrix_);
        if (defect > kUnitarityTolerance) {
            throw InvariantViolation("UnitaryMatrix: ||U^dagger U - I|| = " + std::to_string(defect));
        }
        const double det_gap = std::abs(std::abs(linalg::determinant(matrix_)) - 1.0);
        if (det_gap > kDeterminantTolerance) {
            throw InvariantViolation("UnitaryMatrix: |det U| deviates from 1 by " + std::to_string(det_gap));
        }
    }

    [[nodiscard]] const Matrix& matrix() const { return matrix_; }
    [[nodiscard]] double time() const { return time_; }
    [[nodiscard]] const CircuitParams& params() const { return params_; }

private:
    Matrix matrix_;
    double time_;
    CircuitParams params_;
};

inline StateVector bell_state(BellLabel label) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (label) {
        case BellLabel::kPhiPlus:
            return StateVector(Vector{r, 0.0, 0.0, r});
        case BellLabel::kPsiPlus:
            return StateVector(Vector{0.0, r, r, 0.0});
        case BellLabel::kPhiMinus:
            return StateVector(Vector{r, 0.0, 0.0, -r});
        case BellLabel::kPsiMinus:
            return StateVector(Vector{0.0, r, -r, 0.0});
    }
    throw std::invalid_argument("bell_state: unknown label");
}

namespace detail {

/// sqrt(D) below this is treated as zero; sin(sqrt(D) t / 4) / sqrt(D) -> t / 4.
inline constexpr double kRootDiscriminantFloor = 1e-300;

/// sin(t sqrt(D) / 4) / sqrt(D), continuous through D = 0.
inline double sin_over_root(double root_d, double t) {
    if (root_d < kRootDiscriminantFloor) {
        return t / 4.0;
    }
    return std::sin(0.25 * t * root_d) / root_d;
}

}  // namespace detail

/// Closed-form propagator. Each group of equal entries is evaluated as its
/// printed expression, term by term, without algebraic simplification.
inline UnitaryMatrix analytic_propagator(const CircuitParams& p, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("analytic_propagator: time must be finite");
    }
    const Complex i(0.0, 1.0);
    const double hbar = p.hbar();
    const double e_j = p.e_j();
    const double e_m = p.e_m();
    const double root_d = std::sqrt(p.discriminant());
    const double sin_ratio = detail::sin_over_root(root_d, t);  // sin(t sqrt(D)/4) / sqrt(D)
    const double cos_fast = std::cos(0.25 * t * root_d);
    const double sin_slow = std::sin(0.25 * t * hbar * e_m);
    const double cos_slow = std::cos(0.25 * t * hbar * e_m);

    const Complex u11 = -i * hbar * e_m * sin_ratio / 2.0 + 0.5 * cos_fast - 0.5 * i * sin_slow + 0.5 * cos_slow;
    const Complex u12 = 2.0 * i * e_j * sin_ratio;
    const Complex u14 = -i * hbar * e_m * sin_ratio / 2.0 + 0.5 * cos_fast + 0.5 * i * sin_slow - 0.5 * cos_slow;
    const Complex u22 = i * hbar * e_m * sin_ratio / 2.0 + 0.5 * cos_fast + 0.5 * i * sin_slow + 0.5 * cos_slow;
    const Complex u23 = i * hbar * e_m * sin_ratio / 2.0 + 0.5 * cos_fast - 0.5 * i * sin_slow - 0.5 * cos_slow;

    // clang-format off
    Matrix u = Matrix::from_rows({
        {u11, u12, u12, u14},
        {u12, u22, u23, u12},
        {u12, u23, u22, u12},
        {u14, u12, u12, u11},
    });
    // clang-format on
    return UnitaryMatrix(std::move(u), t, p);
}

/// Spectral synthesis U = sum_j exp(-i lambda_j t / hbar) |v_j><v_j| from the
/// numerically diagonalized Hamiltonian.
inline UnitaryMatrix numeric_propagator(const CircuitParams& p, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("numeric_propagator: time must be finite");
    }
    const auto eig = model::spectral_decompose(model::build_hamiltonian_tensor(p));
    Matrix u = Matrix::zero(4);
    for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
        const Complex phase = std::polar(1.0, -eig.eigenvalues[j] * t / p.hbar());
        u = linalg::add(u, linalg::scale(linalg::outer(eig.eigenvectors[j], eig.eigenvectors[j]), phase));
    }
    return UnitaryMatrix(std::move(u), t, p);
}

/// U |psi>. Not renormalized: a norm drift above 1e-8 throws InvariantViolation.
inline StateVector evolve(const StateVector& state, const UnitaryMatrix& u) {
    return StateVector(linalg::apply(u.matrix(), state.amplitudes()), kEvolveNormDrift);
}

/// |psi><psi|
inline DensityMatrix density_matrix(const StateVector& state) {
    return DensityMatrix::certify(linalg::outer(state.amplitudes(), state.amplitudes()));
}

/// Closed-form rho(t) for a Bell input, entry groups as derived for each
/// label. Phi- and Psi- are time independent.
inline DensityMatrix closed_form_density(BellLabel label, const CircuitParams& p, double t) {
    if (!std::isfinite(t)) {
        throw std::invalid_argument("closed_form_density: time must be finite");
    }
    const Complex i(0.0, 1.0);
    const double hbar = p.hbar();
    const double e_j = p.e_j();
    const double e_m = p.e_m();
    const double d = p.discriminant();
    const double root_d = std::sqrt(d);
    const double sin_fast = std::sin(0.25 * t * root_d);
    const double cos_fast = std::cos(0.25 * t * root_d);
    const double sin_slow = std::sin(0.25 * t * hbar * e_m);
    const double cos_slow = std::cos(0.25 * t * hbar * e_m);

    // sin^2(x)/D and sin(x)/sqrt(D) both vanish as D -> 0 (x = t sqrt(D)/4);
    // their limits are 0 and t/4.
    const bool degenerate = root_d < detail::kRootDiscriminantFloor;
    const double sin2_over_d = degenerate ? 0.0 : sin_fast * sin_fast / d;
    const double sin_over_root = detail::sin_over_root(root_d, t);

    switch (label) {
        case BellLabel::kPhiPlus: {
            const Complex outer = e_m * e_m * hbar * hbar * sin2_over_d / 2.0 + 0.5 * cos_fast * cos_fast;
            const Complex upper = -2.0 * e_j * e_m * hbar * sin2_over_d - 2.0 * i * e_j * sin_over_root * cos_fast;
            const Complex lower = -2.0 * e_j * e_m * hbar * sin2_over_d + 2.0 * i * e_j * sin_over_root * cos_fast;
            const Complex inner = 8.0 * e_j * e_j * sin2_over_d;
            // clang-format off
            return DensityMatrix::certify(Matrix::from_rows({
                {outer, upper, upper, outer},
                {lower, inner, inner, lower},
                {lower, inner, inner, lower},
                {outer, upper, upper, outer},
            }));
            // clang-format on
        }
        case BellLabel::kPsiPlus: {
            const Complex outer = 8.0 * e_j * e_j * sin2_over_d;
            const Complex upper = 2.0 * hbar * e_j * e_m * sin2_over_d + 2.0 * i * e_j * sin_over_root * cos_fast;
            const Complex lower = 2.0 * hbar * e_j * e_m * sin2_over_d - 2.0 * i * e_j * sin_over_root * cos_fast;
            const Complex inner = hbar * hbar * e_m * e_m * sin2_over_d / 2.0 + 0.5 * cos_fast * cos_fast;
            // clang-format off
            return DensityMatrix::certify(Matrix::from_rows({
                {outer, upper, upper, outer},
                {lower, inner, inner, lower},
                {lower, inner, inner, lower},
                {outer, upper, upper, outer},
            }));
            // clang-format on
        }
        case BellLabel::kPhiMinus: {
            const Complex pop = 0.5 * sin_slow * sin_slow + 0.5 * cos_slow * cos_slow;
            const Complex coh = -0.5 * sin_slow * sin_slow - 0.5 * cos_slow * cos_slow;
            // clang-format off
            return DensityMatrix::certify(Matrix::from_rows({
                {pop, 0.0, 0.0, coh},
                {0.0, 0.0, 0.0, 0.0},
                {0.0, 0.0, 0.0, 0.0},
                {coh, 0.0, 0.0, pop},
            }));
            // clang-format on
        }
        case BellLabel::kPsiMinus: {
            const Complex pop = 0.5 * sin_slow * sin_slow + 0.5 * cos_slow * cos_slow;
            const Complex coh = -0.5 * sin_slow * sin_slow - 0.5 * cos_slow * cos_slow;
            // clang-format off
            return DensityMatrix::certify(Matrix::from_rows({
                {0.0, 0.0, 0.0, 0.0},
                {0.0, pop, coh, 0.0},
                {0.0, coh, pop, 0.0},
                {0.0, 0.0, 0.0, 0.0},
            }));
            // clang-format on
        }
    }
    throw std::invalid_argument("closed_form_density: unknown label");
}

inline constexpr double kEigenstateResidual = 1e-10;

/// Returns <psi|H|psi> when ||H psi - <psi|H|psi> psi||_inf <= 1e-10.
inline std::optional<double> eigenstate_check(const model::HamiltonianMatrix& h, const StateVector& state) {
    const Vector h_psi = linalg::apply(h.matrix, state.amplitudes());
    const double lambda = linalg::inner(state.amplitudes(), h_psi).real();
    double residual = 0.0;
    for (std::size_t k = 0; k < h_psi.dim(); ++k) {
        residual = std::max(residual, std::abs(h_psi[k] - lambda * state[k]));
    }
    if (residual <= kEigenstateResidual) {
        return lambda;
    }
    return std::nullopt;
}

}  // namespace tqs::evolution
