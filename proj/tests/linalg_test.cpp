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

#include "tqs/linalg.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "tqs/model.hpp"

using namespace tqs::linalg;
using tqs::testing::random_disc_matrix;
using tqs::testing::random_hermitian;

namespace {

Matrix sample_matrix() {
    return Matrix::from_rows({
        {{1, 2}, {0, -1}, 3, {0.5, 0.5}},
        {4, {-2, 1}, {0, 0}, 1},
        {{0, 1}, 0.25, -7, {2, -3}},
        {1, 1, 1, {1, 1}},
    });
}

}  // namespace

TEST(Matrix, RejectsNonFiniteAndBadShape) {
    EXPECT_THROW(Matrix(2, {1.0, 0.0, 0.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
    EXPECT_THROW(Matrix(2, {1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(Matrix(0, {}), std::invalid_argument);
    EXPECT_THROW(Vector({Complex(0.0, std::numeric_limits<double>::infinity())}), std::invalid_argument);
    EXPECT_THROW(Matrix::from_rows({{1, 2}, {3}}), std::invalid_argument);
}

TEST(Matmul, IdentityAnnihilatorAndDiagonalPower) {
    const Matrix m = sample_matrix();
    EXPECT_EQ(matmul(Matrix::identity(4), m), m);
    EXPECT_EQ(matmul(m, Matrix::zero(4)), Matrix::zero(4));
    const Matrix d = Matrix::diagonal({1, 2, 3, 4});
    EXPECT_EQ(matmul(d, d), Matrix::diagonal({1, 4, 9, 16}));
}

TEST(Matmul, DimensionMismatchRejected) {
    EXPECT_THROW(matmul(Matrix::identity(4), Matrix::identity(2)), std::invalid_argument);
    EXPECT_THROW(frobenius_distance(Matrix::identity(4), Matrix::identity(3)), std::invalid_argument);
}

TEST(Adjoint, Examples) {
    const Matrix sym = Matrix::from_rows({{1, 2, 0, 0}, {2, 3, 0, 0}, {0, 0, 4, 5}, {0, 0, 5, 6}});
    EXPECT_EQ(adjoint(sym), sym);

    const Complex i(0, 1);
    const Matrix upper = Matrix::from_rows({{0, i, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    const Matrix lower = Matrix::from_rows({{0, 0, 0, 0}, {-i, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}});
    EXPECT_EQ(adjoint(upper), lower);

    const auto h = tqs::model::build_hamiltonian_tensor({0.5, 1.5, 1.0}).matrix;
    EXPECT_EQ(adjoint(h), h);
}

TEST(FrobeniusDistance, Examples) {
    const Matrix m = sample_matrix();
    EXPECT_EQ(frobenius_distance(m, m), 0.0);
    EXPECT_DOUBLE_EQ(frobenius_distance(Matrix::identity(4), Matrix::zero(4)), 2.0);
    EXPECT_DOUBLE_EQ(frobenius_distance(Matrix::diagonal({1, 0, 0, 0}), Matrix::zero(4)), 1.0);
}

TEST(Determinant, KnownValues) {
    EXPECT_NEAR(std::abs(determinant(Matrix::diagonal({1, 2, 3, 4})) - 24.0), 0.0, 1e-14);
    const Matrix swap = Matrix::from_rows({{0, 1}, {1, 0}});
    EXPECT_NEAR(std::abs(determinant(swap) + 1.0), 0.0, 1e-15);
    EXPECT_EQ(determinant(Matrix::zero(3)), Complex(0.0));
}

TEST(LinalgProperties, AdjointInvolutionIsBitwise) {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 200; ++n) {
        const Matrix m = random_disc_matrix(rng, 4);
        EXPECT_EQ(adjoint(adjoint(m)), m);
    }
}

TEST(LinalgProperties, MatmulAssociativity) {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 500; ++n) {
        const Matrix a = random_disc_matrix(rng, 4);
        const Matrix b = random_disc_matrix(rng, 4);
        const Matrix c = random_disc_matrix(rng, 4);
        EXPECT_LE(frobenius_distance(matmul(matmul(a, b), c), matmul(a, matmul(b, c))), 1e-12);
    }
}

TEST(HermitianEigensystem, DiagonalInput) {
    const auto es = hermitian_eigensystem(Matrix::diagonal({0.375, -0.375, -0.375, 0.375}));
    ASSERT_EQ(es.eigenvalues.size(), 4u);
    EXPECT_DOUBLE_EQ(es.eigenvalues[0], -0.375);
    EXPECT_DOUBLE_EQ(es.eigenvalues[1], -0.375);
    EXPECT_DOUBLE_EQ(es.eigenvalues[2], 0.375);
    EXPECT_DOUBLE_EQ(es.eigenvalues[3], 0.375);
    // Ties keep diagonal order: -0.375 at index 1 before index 2.
    EXPECT_EQ(es.eigenvectors[0], Vector({0, 1, 0, 0}));
    EXPECT_EQ(es.eigenvectors[1], Vector({0, 0, 1, 0}));
}

TEST(HermitianEigensystem, ReferenceHamiltonianMatchesBlockOracle) {
    const tqs::model::CircuitParams p(0.5, 1.5, 1.0);
    const auto es = hermitian_eigensystem(tqs::model::build_hamiltonian_explicit(p).matrix);
    const auto oracle = tqs::testing::bell_block_spectrum(p);
    const std::array<double, 4> frozen = {-0.625, -0.375, 0.375, 0.625};
    for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(oracle[k], frozen[k], 1e-15);
        EXPECT_NEAR(es.eigenvalues[k], frozen[k], 1e-12);
    }
}

TEST(HermitianEigensystem, ZeroMatrix) {
    const auto es = hermitian_eigensystem(Matrix::zero(4));
    for (int k = 0; k < 4; ++k) {
        EXPECT_EQ(es.eigenvalues[k], 0.0);
        for (int j = 0; j < 4; ++j) {
            EXPECT_NEAR(std::abs(inner(es.eigenvectors[k], es.eigenvectors[j])), k == j ? 1.0 : 0.0, 1e-15);
        }
    }
}

TEST(HermitianEigensystem, RejectsNonHermitian) {
    const Matrix m = Matrix::from_rows({{1, 2}, {0, 1}});
    EXPECT_THROW(hermitian_eigensystem(m), std::invalid_argument);
    const Matrix slightly = Matrix::from_rows({{1, Complex(0, 1e-11)}, {0, 1}});
    EXPECT_THROW(hermitian_eigensystem(slightly), std::invalid_argument);
}

TEST(HermitianEigensystem, RandomReconstructionAndOrthonormality) {
    std::mt19937_64 rng(2024);
    for (int n = 0; n < 500; ++n) {
        const std::size_t dim = (n % 3 == 0) ? 3 + (n % 4) : 4;
        const Matrix h = random_hermitian(rng, dim);
        const auto es = hermitian_eigensystem(h);
        EXPECT_LE(frobenius_distance(reconstruct(es), h), 1e-10);
        for (std::size_t i = 0; i < dim; ++i) {
            if (i > 0) {
                EXPECT_LE(es.eigenvalues[i - 1], es.eigenvalues[i]);
            }
            const Vector hv = apply(h, es.eigenvectors[i]);
            for (std::size_t k = 0; k < dim; ++k) {
                EXPECT_LE(std::abs(hv[k] - es.eigenvalues[i] * es.eigenvectors[i][k]), 1e-10);
            }
            for (std::size_t j = 0; j < dim; ++j) {
                const double expect = i == j ? 1.0 : 0.0;
                EXPECT_LE(std::abs(inner(es.eigenvectors[i], es.eigenvectors[j]) - expect), 1e-10);
            }
        }
        double sum = 0.0;
        for (double l : es.eigenvalues) {
            sum += l;
        }
        EXPECT_NEAR(sum, trace(h).real(), 1e-10);
    }
}

TEST(HermitianEigensystem, ProductMatchesBlockDeterminant) {
    std::mt19937_64 rng(99);
    for (int n = 0; n < 300; ++n) {
        const auto p = tqs::testing::random_params(rng);
        const auto es = hermitian_eigensystem(tqs::model::build_hamiltonian_tensor(p).matrix);
        double prod = 1.0;
        double sum = 0.0;
        for (double l : es.eigenvalues) {
            prod *= l;
            sum += l;
        }
        EXPECT_NEAR(prod, tqs::testing::bell_block_determinant(p), 1e-8);
        EXPECT_NEAR(sum, 0.0, 1e-10);
        EXPECT_NEAR(std::abs(determinant(tqs::model::build_hamiltonian_tensor(p).matrix)),
                    std::abs(tqs::testing::bell_block_determinant(p)), 1e-8);
    }
}
