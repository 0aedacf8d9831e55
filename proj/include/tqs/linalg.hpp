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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tqs/errors.hpp"

/// Small dense complex linear algebra. Dimensions are runtime values; the
/// model only ever uses d = 4, but the coherence routines accept any d.
namespace tqs::linalg {

using Complex = std::complex<double>;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Fixed-length complex column vector. Entries are finite by construction.
class Vector {
public:
    Vector() = default;

    explicit Vector(std::vector<Complex> entries) : entries_(std::move(entries)) {
        if (entries_.empty()) {
            throw std::invalid_argument("Vector: dimension must be positive");
        }
        for (const auto& z : entries_) {
            if (!is_finite(z)) {
                throw std::invalid_argument("Vector: non-finite entry");
            }
        }
    }

    Vector(std::initializer_list<Complex> entries) : Vector(std::vector<Complex>(entries)) {}

    [[nodiscard]] std::size_t dim() const { return entries_.size(); }
    [[nodiscard]] const Complex& operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] std::span<const Complex> entries() const { return entries_; }

    [[nodiscard]] double norm() const {
        double acc = 0.0;
        for (const auto& z : entries_) {
            acc += std::norm(z);
        }
        return std::sqrt(acc);
    }

    friend bool operator==(const Vector&, const Vector&) = default;

private:
    std::vector<Complex> entries_;
};

/// Square complex matrix stored row-major. Entries are finite by construction.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t dim, std::vector<Complex> entries) : dim_(dim), entries_(std::move(entries)) {
        if (dim_ == 0) {
            throw std::invalid_argument("Matrix: dimension must be positive");
        }
        if (entries_.size() != dim_ * dim_) {
            throw std::invalid_argument("Matrix: expected " + std::to_string(dim_ * dim_) + " entries, got " +
                                        std::to_string(entries_.size()));
        }
        for (const auto& z : entries_) {
            if (!is_finite(z)) {
                throw std::invalid_argument("Matrix: non-finite entry");
            }
        }
    }

    /// Builds from nested rows, e.g. `Matrix::from_rows({{1, 0}, {0, 1}})`.
    static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
        const std::size_t n = rows.size();
        std::vector<Complex> flat;
        flat.reserve(n * n);
        for (const auto& row : rows) {
            if (row.size() != n) {
                throw std::invalid_argument("Matrix::from_rows: matrix must be square");
            }
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return Matrix(n, std::move(flat));
    }

    static Matrix zero(std::size_t dim) { return Matrix(dim, std::vector<Complex>(dim * dim)); }

    static Matrix identity(std::size_t dim) {
        std::vector<Complex> e(dim * dim);
        for (std::size_t i = 0; i < dim; ++i) {
            e[i * dim + i] = 1.0;
        }
        return Matrix(dim, std::move(e));
    }

    static Matrix diagonal(std::span<const Complex> diag) {
        const std::size_t n = diag.size();
        std::vector<Complex> e(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            e[i * n + i] = diag[i];
        }
        return Matrix(n, std::move(e));
    }

    static Matrix diagonal(std::initializer_list<Complex> diag) {
        return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const Complex& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }
    [[nodiscard]] std::span<const Complex> entries() const { return entries_; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
struct EigenSystem {
    std::vector<double> eigenvalues;
    std::vector<Vector> eigenvectors;
};

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                                    std::to_string(b) + ")");
    }
}

}  // namespace detail

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    detail::require_same_dim(a.dim(), b.dim(), "matmul");
    const std::size_t n = a.dim();
    std::vector<Complex> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) {
                out[i * n + j] += aik * b(k, j);
            }
        }
    }
    return Matrix(n, std::move(out));
}

inline Vector apply(const Matrix& a, const Vector& v) {
    detail::require_same_dim(a.dim(), v.dim(), "apply");
    const std::size_t n = a.dim();
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i] += a(i, j) * v[j];
        }
    }
    return Vector(std::move(out));
}

/// Conjugate transpose.
inline Matrix adjoint(const Matrix& a) {
    const std::size_t n = a.dim();
    std::vector<Complex> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[j * n + i] = std::conj(a(i, j));
        }
    }
    return Matrix(n, std::move(out));
}

inline Matrix add(const Matrix& a, const Matrix& b) {
    detail::require_same_dim(a.dim(), b.dim(), "add");
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] += b.entries()[k];
    }
    return Matrix(a.dim(), std::move(out));
}

inline Matrix scale(const Matrix& a, Complex factor) {
    std::vector<Complex> out(a.entries().begin(), a.entries().end());
    for (auto& z : out) {
        z *= factor;
    }
    return Matrix(a.dim(), std::move(out));
}

/// |u><v|
inline Matrix outer(const Vector& u, const Vector& v) {
    detail::require_same_dim(u.dim(), v.dim(), "outer");
    const std::size_t n = u.dim();
    std::vector<Complex> out(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out[i * n + j] = u[i] * std::conj(v[j]);
        }
    }
    return Matrix(n, std::move(out));
}

/// <u|v>, conjugate-linear in the first argument.
inline Complex inner(const Vector& u, const Vector& v) {
    detail::require_same_dim(u.dim(), v.dim(), "inner");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

inline Complex trace(const Matrix& a) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += a(i, i);
    }
    return acc;
}

inline double frobenius_norm(const Matrix& a) {
    double acc = 0.0;
    for (const auto& z : a.entries()) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

inline double frobenius_distance(const Matrix& a, const Matrix& b) {
    detail::require_same_dim(a.dim(), b.dim(), "frobenius_distance");
    double acc = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        acc += std::norm(a.entries()[k] - b.entries()[k]);
    }
    return std::sqrt(acc);
}

/// max_ij |a_ij - b_ij|
inline double max_entry_distance(const Matrix& a, const Matrix& b) {
    detail::require_same_dim(a.dim(), b.dim(), "max_entry_distance");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

inline double max_entry_distance(const Vector& a, const Vector& b) {
    detail::require_same_dim(a.dim(), b.dim(), "max_entry_distance");
    double worst = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) {
        worst = std::max(worst, std::abs(a[k] - b[k]));
    }
    return worst;
}

/// max_ij |a_ij - conj(a_ji)|
inline double hermiticity_defect(const Matrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = i; j < a.dim(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return worst;
}

/// ||A^dagger A - I||_inf, the max-entry unitarity defect.
inline double unitarity_defect(const Matrix& a) {
    return max_entry_distance(matmul(adjoint(a), a), Matrix::identity(a.dim()));
}

/// Determinant by LU decomposition with partial pivoting.
inline Complex determinant(const Matrix& a) {
    const std::size_t n = a.dim();
    std::vector<Complex> lu(a.entries().begin(), a.entries().end());
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(lu[r * n + col]) > std::abs(lu[pivot * n + col])) {
                pivot = r;
            }
        }
        if (lu[pivot * n + col] == Complex(0.0)) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t k = 0; k < n; ++k) {
                std::swap(lu[pivot * n + k], lu[col * n + k]);
            }
            det = -det;
        }
        const Complex p = lu[col * n + col];
        det *= p;
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = lu[r * n + col] / p;
            for (std::size_t k = col; k < n; ++k) {
                lu[r * n + k] -= f * lu[col * n + k];
            }
        }
    }
    return det;
}

/// Tolerance on max |h_ij - conj(h_ji)| accepted by hermitian_eigensystem.
inline constexpr double kHermitianTolerance = 1e-12;

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation zeroes one off-diagonal pair (p, q). The complex entry
/// h_pq = |h_pq| e^{i phi} is first reduced to a real symmetric 2x2 problem
/// by the phase diag(1, e^{-i phi}), then annihilated by a real Givens
/// rotation. Sweeps repeat until off(H) <= 1e-14 ||H||_F or 100 sweeps have
/// run, in which case ConvergenceError is thrown. Eigenvalues are sorted
/// ascending, ties kept in their original diagonal order.
inline EigenSystem hermitian_eigensystem(const Matrix& h) {
    const double defect = hermiticity_defect(h);
    if (defect > kHermitianTolerance) {
        throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    }
    constexpr int kMaxSweeps = 100;
    constexpr double kRelativeOff = 1e-14;

    const std::size_t n = h.dim();
    std::vector<Complex> a(h.entries().begin(), h.entries().end());
    std::vector<Complex> v(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i * n + i] = 1.0;
    }
    auto at = [n](std::vector<Complex>& m, std::size_t r, std::size_t c) -> Complex& { return m[r * n + c]; };

    // Symmetrize so the iteration starts from an exactly Hermitian matrix.
    for (std::size_t i = 0; i < n; ++i) {
        at(a, i, i) = at(a, i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex mean = 0.5 * (at(a, i, j) + std::conj(at(a, j, i)));
            at(a, i, j) = mean;
            at(a, j, i) = std::conj(mean);
        }
    }

    const double scale_norm = frobenius_norm(h);
    auto off_norm = [&]() {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    acc += std::norm(at(a, i, j));
                }
            }
        }
        return std::sqrt(acc);
    };

    bool converged = scale_norm == 0.0 || off_norm() <= kRelativeOff * scale_norm;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex hpq = at(a, p, q);
                const double mag = std::abs(hpq);
                if (mag == 0.0) {
                    continue;
                }
                const Complex phase = hpq / mag;  // e^{i phi}
                const double app = at(a, p, p).real();
                const double aqq = at(a, q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on (p, q).
                const Complex g_pp = c;
                const Complex g_pq = s;
                const Complex g_qp = -s * std::conj(phase);
                const Complex g_qq = c * std::conj(phase);

                // A <- A G
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = at(a, k, p);
                    const Complex akq = at(a, k, q);
                    at(a, k, p) = akp * g_pp + akq * g_qp;
                    at(a, k, q) = akp * g_pq + akq * g_qq;
                }
                // A <- G^dagger A
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = at(a, p, k);
                    const Complex aqk = at(a, q, k);
                    at(a, p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
                    at(a, q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
                }
                // V <- V G
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = at(v, k, p);
                    const Complex vkq = at(v, k, q);
                    at(v, k, p) = vkp * g_pp + vkq * g_qp;
                    at(v, k, q) = vkp * g_pq + vkq * g_qq;
                }
                at(a, p, q) = 0.0;
                at(a, q, p) = 0.0;
                at(a, p, p) = at(a, p, p).real();
                at(a, q, q) = at(a, q, q).real();
            }
        }
        converged = off_norm() <= kRelativeOff * scale_norm;
    }
    if (!converged) {
        throw ConvergenceError("hermitian_eigensystem: Jacobi iteration did not converge in 100 sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return at(a, x, x).real() < at(a, y, y).real(); });

    EigenSystem result;
    result.eigenvalues.reserve(n);
    result.eigenvectors.reserve(n);
    for (std::size_t idx : order) {
        result.eigenvalues.push_back(at(a, idx, idx).real());
        std::vector<Complex> column(n);
        for (std::size_t k = 0; k < n; ++k) {
            column[k] = at(v, k, idx);
        }
        result.eigenvectors.emplace_back(std::move(column));
    }
    return result;
}

/// Sum_j lambda_j |v_j><v_j|
inline Matrix reconstruct(const EigenSystem& es) {
    const std::size_t n = es.eigenvectors.front().dim();
    Matrix acc = Matrix::zero(n);
    for (std::size_t j = 0; j < es.eigenvalues.size(); ++j) {
        acc = add(acc, scale(outer(es.eigenvectors[j], es.eigenvectors[j]), es.eigenvalues[j]));
    }
    return acc;
}

}  // namespace tqs::linalg
