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
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tqs/errors.hpp"
#include "tqs/linalg.hpp"

/// Two-qubit superconducting circuit Hamiltonian
///
///   H = 1/4 hbar^2 E_m  sz (x) sz  -  1/2 hbar E_J  sx (x) I  -  1/2 hbar E_J  I (x) sx
///
/// in the computational basis {|00>, |01>, |10>, |11>}, indexed 0..3. Matrix
/// element "(1,4)" in one-based physics notation is `(0, 3)` here.
///
/// E_J, E_m and hbar are raw model numbers; the mixed powers of hbar are kept
/// exactly as written, with no unit analysis.
namespace tqs::model {

using linalg::Complex;
using linalg::Matrix;

class CircuitParams {
public:
    /// Throws std::invalid_argument unless all values are finite and hbar > 0.
    CircuitParams(double e_j, double e_m, double hbar = 1.0) : e_j_(e_j), e_m_(e_m), hbar_(hbar) {
        if (!std::isfinite(e_j) || !std::isfinite(e_m) || !std::isfinite(hbar)) {
            throw std::invalid_argument("CircuitParams: parameters must be finite");
        }
        if (!(hbar > 0.0)) {
            throw std::invalid_argument("CircuitParams: hbar must be positive");
        }
    }

    /// hbar = 1, E_J = 1/2, E_m = 3/2.
    static CircuitParams reference() { return {0.5, 1.5, 1.0}; }

    [[nodiscard]] double e_j() const { return e_j_; }
    [[nodiscard]] double e_m() const { return e_m_; }
    [[nodiscard]] double hbar() const { return hbar_; }

    /// 16 E_J^2 + hbar^2 E_m^2, the quantity under every square root.
    [[nodiscard]] double discriminant() const { return 16.0 * e_j_ * e_j_ + hbar_ * hbar_ * e_m_ * e_m_; }

    friend bool operator==(const CircuitParams&, const CircuitParams&) = default;

private:
    double e_j_;
    double e_m_;
    double hbar_;
};

struct HamiltonianMatrix {
    CircuitParams params;
    Matrix matrix;
};

struct FrequencyScales {
    double omega_fast;                  ///< 1/4 sqrt(16 E_J^2 + hbar^2 E_m^2)
    double omega_slow;                  ///< 1/2 hbar E_m
    std::optional<double> period_fast;  ///< pi / omega_fast; empty when omega_fast == 0
};

namespace pauli {

inline Matrix identity() { return Matrix::identity(2); }
inline Matrix x() { return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
inline Matrix z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

}  // namespace pauli

/// Kronecker product a (x) b; qubit a is the most significant index bit.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t na = a.dim();
    const std::size_t nb = b.dim();
    const std::size_t n = na * nb;
    std::vector<Complex> out(n * n);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out[(i * nb + k) * n + (j * nb + l)] = a(i, j) * b(k, l);
                }
            }
        }
    }
    return Matrix(n, std::move(out));
}

/// Assembles H from Pauli matrices and Kronecker products.
inline HamiltonianMatrix build_hamiltonian_tensor(const CircuitParams& p) {
    const double zz = 0.25 * p.hbar() * p.hbar() * p.e_m();
    const double tunnel = -0.5 * p.hbar() * p.e_j();
    Matrix h = linalg::scale(kron(pauli::z(), pauli::z()), zz);
    h = linalg::add(h, linalg::scale(kron(pauli::x(), pauli::identity()), tunnel));
    h = linalg::add(h, linalg::scale(kron(pauli::identity(), pauli::x()), tunnel));
    return {p, std::move(h)};
}

/// Writes H entry by entry in the computational basis.
inline HamiltonianMatrix build_hamiltonian_explicit(const CircuitParams& p) {
    const double d = p.hbar() * p.hbar() * p.e_m() / 4.0;
    const double o = -p.hbar() * p.e_j() / 2.0;
    // clang-format off
    Matrix h = Matrix::from_rows({
        { d,  o,  o, 0.0},
        { o, -d, 0.0,  o},
        { o, 0.0, -d,  o},
        {0.0, o,  o,   d},
    });
    // clang-format on
    return {p, std::move(h)};
}

inline linalg::EigenSystem spectral_decompose(const HamiltonianMatrix& h) {
    return linalg::hermitian_eigensystem(h.matrix);
}

inline FrequencyScales frequency_scales(const CircuitParams& p) {
    FrequencyScales f{};
    f.omega_fast = 0.25 * std::sqrt(p.discriminant());
    f.omega_slow = 0.5 * p.hbar() * p.e_m();
    if (f.omega_fast > 0.0) {
        f.period_fast = std::numbers::pi / f.omega_fast;
    }
    return f;
}

}  // namespace tqs::model
