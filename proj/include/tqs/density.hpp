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

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "tqs/errors.hpp"
#include "tqs/linalg.hpp"

namespace tqs {

inline constexpr double kDensityHermitianTolerance = 1e-10;
inline constexpr double kDensityTraceTolerance = 1e-10;
inline constexpr double kDensityMinEigenvalue = -1e-9;
inline constexpr double kPurityTolerance = 1e-9;

enum class DensityViolation { kNotHermitian, kTrace, kNegativeEigenvalue };

inline std::string_view to_string(DensityViolation v) {
    switch (v) {
        case DensityViolation::kNotHermitian:
            return "hermiticity";
        case DensityViolation::kTrace:
            return "trace";
        case DensityViolation::kNegativeEigenvalue:
            return "positivity";
    }
    return "unknown";
}

struct DensityCheck;

/// Hermitian, unit-trace, positive semidefinite matrix. Only constructible
/// through validate_density (or the throwing `certify`).
class DensityMatrix {
public:
    [[nodiscard]] const linalg::Matrix& matrix() const { return matrix_; }
    [[nodiscard]] std::size_t dim() const { return matrix_.dim(); }
    [[nodiscard]] const linalg::Complex& operator()(std::size_t r, std::size_t c) const { return matrix_(r, c); }
    [[nodiscard]] double min_eigenvalue() const { return min_eigenvalue_; }

    /// trace(rho^2)
    [[nodiscard]] double purity() const {
        double acc = 0.0;
        for (const auto& z : matrix_.entries()) {
            acc += std::norm(z);
        }
        return acc;
    }

    /// validate_density, throwing InvariantViolation on failure.
    static DensityMatrix certify(const linalg::Matrix& rho);

private:
    DensityMatrix(linalg::Matrix m, double min_eig) : matrix_(std::move(m)), min_eigenvalue_(min_eig) {}
    friend DensityCheck validate_density(const linalg::Matrix& rho);

    linalg::Matrix matrix_;
    double min_eigenvalue_;
};

/// Outcome of validate_density: either a certified matrix or the first
/// violated property, checked in the order hermiticity, trace, positivity.
struct DensityCheck {
    std::optional<DensityMatrix> density;
    std::optional<DensityViolation> violation;
    std::string detail;

    [[nodiscard]] bool ok() const { return !violation.has_value(); }
};

inline DensityCheck validate_density(const linalg::Matrix& rho) {
    DensityCheck check;
    const double herm = linalg::hermiticity_defect(rho);
    if (herm > kDensityHermitianTolerance) {
        check.violation = DensityViolation::kNotHermitian;
        check.detail = "hermiticity defect " + std::to_string(herm);
        return check;
    }
    const linalg::Complex tr = linalg::trace(rho);
    if (std::abs(tr - 1.0) > kDensityTraceTolerance) {
        check.violation = DensityViolation::kTrace;
        check.detail = "trace " + std::to_string(tr.real()) + (tr.imag() != 0.0 ? "+" + std::to_string(tr.imag()) + "i" : "");
        return check;
    }
    // The eigensolver demands a tighter hermiticity bound than the density
    // tolerance, so hand it the Hermitian part.
    const linalg::Matrix herm_part = linalg::scale(linalg::add(rho, linalg::adjoint(rho)), 0.5);
    const double min_eig = linalg::hermitian_eigensystem(herm_part).eigenvalues.front();
    if (min_eig < kDensityMinEigenvalue) {
        check.violation = DensityViolation::kNegativeEigenvalue;
        check.detail = "negative eigenvalue " + std::to_string(min_eig);
        return check;
    }
    check.density = DensityMatrix(rho, min_eig);
    return check;
}

inline DensityMatrix DensityMatrix::certify(const linalg::Matrix& rho) {
    auto check = validate_density(rho);
    if (!check.ok()) {
        throw InvariantViolation("invalid density matrix: " + std::string(to_string(*check.violation)) + " (" +
                                 check.detail + ")");
    }
    return std::move(*check.density);
}

}  // namespace tqs
