// Copyright 2026 The AQCE Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Dense complex linear algebra with fixed conventions.
 *
 * The SVD follows the factorization m = X * diag(d) * Y where Y is a plain
 * unitary factor. In the conventional notation m = U S V^dagger this is
 * X = U and Y = V^dagger, so the fidelity-maximizing unitary is X * Y.
 */

#pragma once

#include <random>
#include <vector>

#include "aqce/types.hpp"

namespace aqce {

struct SVDResult {
    ComplexMatrix left;            ///< X
    std::vector<double> singular;  ///< d_n, descending, non-negative
    ComplexMatrix right;           ///< Y (not conjugated)
};

struct EigResult {
    std::vector<double> values;  ///< descending
    ComplexMatrix vectors;       ///< columns are eigenvectors
};

struct UnitaryEigResult {
    std::vector<Complex> values;  ///< unit modulus
    RealMatrix vectors;           ///< real orthogonal, columns are eigenvectors
};

/// SVD of a square matrix, singular values descending.
SVDResult svd(const ComplexMatrix &m);

/// Eigen-decomposition of a Hermitian matrix; input is symmetrized first.
EigResult hermitian_eig(const ComplexMatrix &m);

/**
 * Eigen-decomposition of a unitary, complex-symmetric matrix with real
 * orthonormal eigenvectors.
 *
 * Eigenvalues that agree to within a clustering tolerance are grouped and the
 * real and imaginary parts of each group's eigenvectors are orthonormalized
 * over the reals, which yields a real basis of the shared eigenspace.
 */
UnitaryEigResult unitary_eig(const ComplexMatrix &m);

/// max |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// max |(m^dagger m - I)_ij|; requires a square matrix.
double unitarity_deviation(const ComplexMatrix &m);

/// max |m_ij - conj(m_ji)|
double hermiticity_deviation(const ComplexMatrix &m);

bool all_finite(const ComplexMatrix &m);

/**
 * Phase phi minimizing ||e^{i phi} a - b||_F, i.e. arg tr(a^dagger b).
 * Returns 0 when the trace vanishes.
 */
double best_phase(const ComplexMatrix &a, const ComplexMatrix &b);

/// max |e^{i phi} a - b| after solving phi with best_phase().
double max_abs_diff_up_to_phase(const ComplexMatrix &a,
                                const ComplexMatrix &b);

/// Haar-random n x n unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64 &rng);

/// Matrix with i.i.d. standard complex Gaussian entries.
ComplexMatrix random_complex_matrix(std::size_t rows, std::size_t cols,
                                    std::mt19937_64 &rng);

/// Wrap an angle into (-pi, pi]; exact ties at -pi map to +pi.
double wrap_angle(double a);

} // namespace aqce
