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
 * Two-qubit gate decomposition.
 *
 * Any 4x4 unitary on a bond (i, j) is written as
 *
 *     U = e^{-i a0} (R'_i R'_j) D(a1, a2, a3) (R_i R_j),
 *     D = exp(-i (a1 XX + a2 YY + a3 ZZ)),
 *
 * and then as a fixed 15-angle sequence of single-qubit rotations and three
 * CNOTs (control i, target j). Operators are listed in the order they act:
 *
 *     Rz_i(t0) Ry_i(t1) Rz_i(t2)   Rz_j(t3) Ry_j(t4) Rz_j(t5)
 *     CX  Rx_i(-2 t6) H_i  Rz_j(-2 t8)
 *     CX  Rz_j(2 t7)  S_i  H_i
 *     CX  Rx_i(-pi/2) Rx_j(pi/2)
 *     Rz_i(t9) Ry_i(t10) Rz_i(t11)   Rz_j(t12) Ry_j(t13) Rz_j(t14)
 *
 * with R_P(t) = exp(-i t P / 2). The middle block equals D(-t6, -t7, -t8) up
 * to a global phase.
 */

#pragma once

#include <array>
#include <string>

#include "json.hpp"

#include "aqce/types.hpp"

namespace aqce {

/// V = e^{-i theta0 / 2} Rz(theta3) Ry(theta2) Rz(theta1)
struct EulerAngles {
    double theta0 = 0.0;
    double theta1 = 0.0;
    double theta2 = 0.0;
    double theta3 = 0.0;
};

struct CanonicalForm {
    double alpha0 = 0.0;
    std::array<double, 3> alphas{};
    EulerAngles r_i;  ///< acts first on qubit i
    EulerAngles r_j;  ///< acts first on qubit j
    EulerAngles rp_i; ///< acts last on qubit i
    EulerAngles rp_j; ///< acts last on qubit j
};

struct GateParams {
    std::array<double, 15> theta{};
    /// The full gate is e^{i global_phase} times the bare sequence.
    double global_phase = 0.0;
};

enum class MagicDirection { kToMagic, kFromMagic };

// ---- single-qubit pieces --------------------------------------------------

[[nodiscard]] Matrix2c rx(double t);
[[nodiscard]] Matrix2c ry(double t);
[[nodiscard]] Matrix2c rz(double t);
[[nodiscard]] Matrix2c hadamard();
[[nodiscard]] Matrix2c phase_s();

/// a on qubit i, b on qubit j, in the bond basis sigma_i + 2 sigma_j.
[[nodiscard]] Matrix4c local_product(const Matrix2c &a, const Matrix2c &b);

[[nodiscard]] Matrix4c on_first(const Matrix2c &a);
[[nodiscard]] Matrix4c on_second(const Matrix2c &b);

/// CNOT with the bond's first qubit as control.
[[nodiscard]] Matrix4c cnot();
[[nodiscard]] Matrix4c swap_gate();

/// exp(-i (a1 XX + a2 YY + a3 ZZ))
[[nodiscard]] Matrix4c entangler(const std::array<double, 3> &alphas);

// ---- Euler ---------------------------------------------------------------

[[nodiscard]] Matrix2c euler_matrix(const EulerAngles &e);

/**
 * Z-Y-Z angles of a 2x2 unitary. theta1, theta3 in (-pi, pi],
 * theta2 in [0, pi]. theta0 lies in (-2 pi, 2 pi]: the half-angle phase
 * e^{-i theta0 / 2} distinguishes V from -V, so it needs a 4 pi period.
 */
[[nodiscard]] EulerAngles euler_decompose(const Matrix2c &v);

// ---- magic basis -----------------------------------------------------------

/// Columns are the magic basis states; rows use the bond index.
[[nodiscard]] const Matrix4c &magic_basis();

/// kToMagic: M^dagger u M. kFromMagic: M u M^dagger.
[[nodiscard]] Matrix4c magic_transform(const Matrix4c &u,
                                       MagicDirection direction);

// ---- canonical form --------------------------------------------------------

[[nodiscard]] CanonicalForm kak_decompose(const Matrix4c &u);

[[nodiscard]] Matrix4c reconstruct_canonical(const CanonicalForm &cf);

/**
 * Representative of the local-equivalence class of the entangling angles:
 * pi/4 >= a1 >= a2 >= |a3|, with a3 >= 0 when a1 = pi/4. For comparisons
 * only.
 */
[[nodiscard]] std::array<double, 3>
weyl_canonicalize(const std::array<double, 3> &alphas);

// ---- gate sequence ---------------------------------------------------------

[[nodiscard]] GateParams to_gate_params(const CanonicalForm &cf);

/// e^{i global_phase} times the 15-angle sequence.
[[nodiscard]] Matrix4c reconstruct_gate(const GateParams &params);

/// kak_decompose followed by to_gate_params.
[[nodiscard]] GateParams decompose_gate(const Matrix4c &u);

// ---- serialization ---------------------------------------------------------

/**
 * A JSON array of the 15 angles. With include_phase the result is
 * {"theta": [...], "global_phase": x} instead.
 */
[[nodiscard]] nlohmann::json gate_params_to_json(const GateParams &params,
                                                 bool include_phase = false);

/// Accepts an array of 15 numbers (global phase 0) or
/// {"theta": [...15], "global_phase": x}.
[[nodiscard]] GateParams gate_params_from_json(const nlohmann::json &j);

/// 32 doubles, (re, im) pairs in row-major order.
[[nodiscard]] nlohmann::json matrix_to_json(const Matrix4c &m);
[[nodiscard]] Matrix4c matrix_from_json(const nlohmann::json &j);

/// identity, cnot, swap, cz, iswap, sqrt-swap; throws InputError otherwise.
[[nodiscard]] Matrix4c builtin_gate(const std::string &name);

} // namespace aqce
