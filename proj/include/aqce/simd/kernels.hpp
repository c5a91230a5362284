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
 * Statevector inner-loop kernels with a scalar reference implementation and
 * an AVX2/FMA variant, selected once at runtime.
 *
 * All kernels operate on interleaved (re, im) double arrays of length 2^L.
 * Two-qubit kernels address the local basis |n>, n = s_q0 + 2 s_q1, and
 * iterate over the 2^(L-2) environment configurations in ascending order.
 */

#pragma once

#include <cstddef>
#include <string_view>

#include "aqce/types.hpp"

namespace aqce::simd {

struct KernelTable {
    std::string_view name;

    /// amps <- (m on (q0, q1)) amps; m is 4x4 row-major.
    void (*apply_two_qubit)(Complex *amps, std::size_t num_qubits,
                            std::size_t q0, std::size_t q1,
                            const Complex *m);

    /// sum_n conj(bra_n) ket_n
    Complex (*inner_product)(const Complex *bra, const Complex *ket,
                             std::size_t n);

    /// sum_n |a_n|^2
    double (*norm_squared)(const Complex *a, std::size_t n);

    /**
     * out[4 r + c] = sum_env ket[(r, env)] * conj(bra[(c, env)]), the
     * partial trace of |ket><bra| over everything but (q0, q1).
     */
    void (*fidelity_tensor)(const Complex *ket, const Complex *bra,
                            std::size_t num_qubits, std::size_t q0,
                            std::size_t q1, Complex *out);
};

enum class KernelKind { kScalar, kAvx2 };

const KernelTable &scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable *avx2_kernels();

/// True when the AVX2 table exists and the running CPU has AVX2 and FMA.
bool avx2_available();

/**
 * Table used by the library. Chosen on first use: AVX2 when available,
 * unless the environment variable AQCE_KERNELS is set to "scalar".
 */
const KernelTable &active_kernels();

/// Override the active table (tests, benchmarks). Throws if unavailable.
void set_active_kernels(KernelKind kind);

} // namespace aqce::simd
