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
 * Shared scalar/matrix aliases, qubit-pair type, tolerances and the
 * exception hierarchy used throughout the library.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace aqce {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;
using RealMatrix = Eigen::MatrixXd;

/// Numerical tolerances. Every check in the library reads from here.
namespace tol {
inline constexpr double kReconstruction = 1e-12;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kUnitary = 1e-12;
/// Looser unitarity gate applied to caller-supplied matrices.
inline constexpr double kUnitaryInput = 1e-10;
inline constexpr double kNorm = 1e-10;
inline constexpr double kKakReconstruction = 1e-10;
inline constexpr double kPhaseSolve = 1e-9;
} // namespace tol

/**
 * An ordered pair of distinct qubits. The local 4-dimensional basis on a
 * bond is |n> with n = sigma_first + 2 * sigma_second, so (i, j) and (j, i)
 * address the same qubits with swapped roles.
 */
struct Bond {
    std::size_t first = 0;
    std::size_t second = 1;

    friend bool operator==(const Bond &, const Bond &) = default;
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Shape or index mismatch (non-square matrix, qubit out of range, ...).
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// Non-finite entries, non-unitary input, failed numerical postcondition.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// File parsing and I/O failures.
class IoError : public Error {
  public:
    using Error::Error;
};

/// Invalid configuration or user input.
class InputError : public Error {
  public:
    using Error::Error;
};

/// Broken internal invariant. Seeing one of these is a bug.
class InternalError : public Error {
  public:
    using Error::Error;
};

} // namespace aqce
