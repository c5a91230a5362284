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

#pragma once

#include <algorithm>
#include <cstddef>

namespace aqce::simd::detail {

// Internal linkage on purpose: this header is compiled both with and without
// AVX2 code generation, and the two copies must never be merged by the linker.
namespace {

/// Index bookkeeping for a pair of qubits inside an L-qubit register.
struct PairIndexer {
    std::size_t lo_mask;  // bits below the lower qubit
    std::size_t hi_mask;  // bits below the higher qubit
    std::size_t offset[4];
    std::size_t lo;
    std::size_t count; // 2^(L-2)

    PairIndexer(std::size_t num_qubits, std::size_t q0, std::size_t q1) {
        lo = std::min(q0, q1);
        const std::size_t hi = std::max(q0, q1);
        lo_mask = (std::size_t{1} << lo) - 1;
        hi_mask = (std::size_t{1} << hi) - 1;
        offset[0] = 0;
        offset[1] = std::size_t{1} << q0;
        offset[2] = std::size_t{1} << q1;
        offset[3] = offset[1] | offset[2];
        count = std::size_t{1} << (num_qubits - 2);
    }

    /// k-th environment configuration with zeros inserted at both qubits.
    [[nodiscard]] std::size_t base(std::size_t k) const {
        std::size_t r = (k & lo_mask) | ((k & ~lo_mask) << 1);
        r = (r & hi_mask) | ((r & ~hi_mask) << 1);
        return r;
    }
};

} // namespace

} // namespace aqce::simd::detail
