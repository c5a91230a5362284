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
 * Published reference circuits and the self-check suite behind
 * `aqce verify`.
 */

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "aqce/circuit.hpp"
#include "aqce/gates.hpp"

namespace aqce::golden {

using Angles = std::array<double, 15>;

/// Two-qubit singlet (|n=2> - |n=1>) / sqrt(2).
[[nodiscard]] StateVector singlet_state();
/// Fixed random two-qubit state reproduced by the published angles.
[[nodiscard]] StateVector random2_state();
/// (|000> + |111>) / sqrt(2).
[[nodiscard]] StateVector ghz_state();
/// Fixed random three-qubit state, renormalized from 8-digit amplitudes.
[[nodiscard]] StateVector random3_state();

[[nodiscard]] const Angles &singlet_angles();
[[nodiscard]] const Angles &random2_angles();
/// Blocks in application order.
[[nodiscard]] const std::array<Angles, 2> &ghz_angles();
[[nodiscard]] const std::array<Angles, 2> &random3_angles();

/// Circuit built from angle sets, block k on bonds[k], acting in order.
[[nodiscard]] Circuit circuit_from_angles(std::size_t num_qubits,
                                          const std::vector<Angles> &angles,
                                          const std::vector<Bond> &bonds);

/// H_0, then CX(0 -> 1), then CX(1 -> 2).
[[nodiscard]] Circuit ghz_builder();
/// X_0 X_1, then H_0, then CX(0 -> 1).
[[nodiscard]] Circuit singlet_builder();

struct CheckResult {
    std::string name;
    std::string group; ///< tables, builders or tomography
    bool passed = false;
    double value = 0.0;     ///< measured quantity
    double threshold = 0.0; ///< pass bound
    std::string detail;
};

struct VerifyOptions {
    /// Restricts to checks whose group or name matches; empty runs all.
    std::vector<std::string> only;
    /// Adds this offset to every angle of the named table before building
    /// (for exercising the suite itself). Names: table1, table2, table3.
    std::string mutate_table;
    double mutate_offset = 0.0;
    std::uint64_t seed = 1;
};

[[nodiscard]] std::vector<CheckResult> run_checks(const VerifyOptions &options);

/// "PASS name: detail" / "FAIL name: detail"
[[nodiscard]] std::string format_check(const CheckResult &result);

} // namespace aqce::golden
