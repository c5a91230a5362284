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

// Reference kernels. Every other variant is tested against these.

#include "aqce/simd/kernels.hpp"
#include "index_util.hpp"

namespace aqce::simd {

namespace {

void apply_two_qubit_scalar(Complex *amps, std::size_t num_qubits,
                            std::size_t q0, std::size_t q1,
                            const Complex *m) {
    const detail::PairIndexer ix(num_qubits, q0, q1);
    for (std::size_t k = 0; k < ix.count; ++k) {
        const std::size_t b = ix.base(k);
        Complex v[4];
        for (int c = 0; c < 4; ++c) {
            v[c] = amps[b + ix.offset[c]];
        }
        for (int r = 0; r < 4; ++r) {
            Complex acc = m[4 * r] * v[0];
            acc += m[4 * r + 1] * v[1];
            acc += m[4 * r + 2] * v[2];
            acc += m[4 * r + 3] * v[3];
            amps[b + ix.offset[r]] = acc;
        }
    }
}

Complex inner_product_scalar(const Complex *bra, const Complex *ket,
                             std::size_t n) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::conj(bra[i]) * ket[i];
    }
    return acc;
}

double norm_squared_scalar(const Complex *a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += std::norm(a[i]);
    }
    return acc;
}

void fidelity_tensor_scalar(const Complex *ket, const Complex *bra,
                            std::size_t num_qubits, std::size_t q0,
                            std::size_t q1, Complex *out) {
    const detail::PairIndexer ix(num_qubits, q0, q1);
    Complex acc[16] = {};
    for (std::size_t k = 0; k < ix.count; ++k) {
        const std::size_t b = ix.base(k);
        Complex kv[4];
        Complex bv[4];
        for (int c = 0; c < 4; ++c) {
            kv[c] = ket[b + ix.offset[c]];
            bv[c] = std::conj(bra[b + ix.offset[c]]);
        }
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                acc[4 * r + c] += kv[r] * bv[c];
            }
        }
    }
    for (int i = 0; i < 16; ++i) {
        out[i] = acc[i];
    }
}

} // namespace

const KernelTable &scalar_kernels() {
    static const KernelTable table{
        "scalar",
        &apply_two_qubit_scalar,
        &inner_product_scalar,
        &norm_squared_scalar,
        &fidelity_tensor_scalar,
    };
    return table;
}

} // namespace aqce::simd
