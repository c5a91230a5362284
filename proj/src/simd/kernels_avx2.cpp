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

// AVX2/FMA kernels. This translation unit is the only one built with
// -mavx2 -mfma; it works on raw doubles and avoids std::complex arithmetic
// so that no AVX2-compiled inline function can leak into scalar callers.
//
// A __m256d holds two interleaved complex numbers. When neither qubit of the
// pair is qubit 0, environments k and k+1 (k even) are adjacent in memory,
// so each 256-bit lane pair processes two environments at once. Otherwise
// the kernels fall back to 128-bit lanes, one complex per register.

#include "aqce/simd/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include "index_util.hpp"

namespace aqce::simd {

namespace {

inline const double *as_doubles(const Complex *p) {
    return reinterpret_cast<const double *>(p);
}

inline double *as_doubles(Complex *p) { return reinterpret_cast<double *>(p); }

void apply_two_qubit_avx2(Complex *amps_c, std::size_t num_qubits,
                          std::size_t q0, std::size_t q1, const Complex *m) {
    const detail::PairIndexer ix(num_qubits, q0, q1);
    double *amps = as_doubles(amps_c);
    const double *md = as_doubles(m);

    if (ix.lo >= 1) {
        __m256d mr[16];
        __m256d mi[16];
        for (int e = 0; e < 16; ++e) {
            mr[e] = _mm256_set1_pd(md[2 * e]);
            mi[e] = _mm256_set1_pd(md[2 * e + 1]);
        }
        for (std::size_t k = 0; k < ix.count; k += 2) {
            const std::size_t b = ix.base(k);
            __m256d v[4];
            __m256d vs[4];
            for (int c = 0; c < 4; ++c) {
                v[c] = _mm256_loadu_pd(amps + 2 * (b + ix.offset[c]));
                vs[c] = _mm256_permute_pd(v[c], 0b0101);
            }
            for (int r = 0; r < 4; ++r) {
                __m256d re_part = _mm256_mul_pd(v[0], mr[4 * r]);
                __m256d im_part = _mm256_mul_pd(vs[0], mi[4 * r]);
                for (int c = 1; c < 4; ++c) {
                    re_part = _mm256_fmadd_pd(v[c], mr[4 * r + c], re_part);
                    im_part = _mm256_fmadd_pd(vs[c], mi[4 * r + c], im_part);
                }
                _mm256_storeu_pd(amps + 2 * (b + ix.offset[r]),
                                 _mm256_addsub_pd(re_part, im_part));
            }
        }
        return;
    }

    __m128d mr[16];
    __m128d mi[16];
    for (int e = 0; e < 16; ++e) {
        mr[e] = _mm_set1_pd(md[2 * e]);
        mi[e] = _mm_set1_pd(md[2 * e + 1]);
    }
    for (std::size_t k = 0; k < ix.count; ++k) {
        const std::size_t b = ix.base(k);
        __m128d v[4];
        __m128d vs[4];
        for (int c = 0; c < 4; ++c) {
            v[c] = _mm_loadu_pd(amps + 2 * (b + ix.offset[c]));
            vs[c] = _mm_permute_pd(v[c], 0b01);
        }
        for (int r = 0; r < 4; ++r) {
            __m128d re_part = _mm_mul_pd(v[0], mr[4 * r]);
            __m128d im_part = _mm_mul_pd(vs[0], mi[4 * r]);
            for (int c = 1; c < 4; ++c) {
                re_part = _mm_fmadd_pd(v[c], mr[4 * r + c], re_part);
                im_part = _mm_fmadd_pd(vs[c], mi[4 * r + c], im_part);
            }
            _mm_storeu_pd(amps + 2 * (b + ix.offset[r]),
                          _mm_addsub_pd(re_part, im_part));
        }
    }
}

inline double hsum(__m256d v) {
    const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(v),
                                 _mm256_extractf128_pd(v, 1));
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

Complex inner_product_avx2(const Complex *bra_c, const Complex *ket_c,
                           std::size_t n) {
    const double *a = as_doubles(bra_c);
    const double *b = as_doubles(ket_c);
    // direct = [ar br, ai bi], cross = [ar bi, ai br] per complex.
    __m256d direct0 = _mm256_setzero_pd();
    __m256d direct1 = _mm256_setzero_pd();
    __m256d cross0 = _mm256_setzero_pd();
    __m256d cross1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a0 = _mm256_loadu_pd(a + 2 * i);
        const __m256d b0 = _mm256_loadu_pd(b + 2 * i);
        const __m256d a1 = _mm256_loadu_pd(a + 2 * i + 4);
        const __m256d b1 = _mm256_loadu_pd(b + 2 * i + 4);
        direct0 = _mm256_fmadd_pd(a0, b0, direct0);
        direct1 = _mm256_fmadd_pd(a1, b1, direct1);
        cross0 = _mm256_fmadd_pd(a0, _mm256_permute_pd(b0, 0b0101), cross0);
        cross1 = _mm256_fmadd_pd(a1, _mm256_permute_pd(b1, 0b0101), cross1);
    }
    const __m256d direct = _mm256_add_pd(direct0, direct1);
    const __m256d cross = _mm256_add_pd(cross0, cross1);
    const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double re = hsum(direct);
    double im = hsum(_mm256_mul_pd(cross, sign));
    for (; i < n; ++i) {
        const double ar = a[2 * i];
        const double ai = a[2 * i + 1];
        const double br = b[2 * i];
        const double bi = b[2 * i + 1];
        re += ar * br + ai * bi;
        im += ar * bi - ai * br;
    }
    return {re, im};
}

double norm_squared_avx2(const Complex *a_c, std::size_t n) {
    const double *a = as_doubles(a_c);
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x0 = _mm256_loadu_pd(a + 2 * i);
        const __m256d x1 = _mm256_loadu_pd(a + 2 * i + 4);
        acc0 = _mm256_fmadd_pd(x0, x0, acc0);
        acc1 = _mm256_fmadd_pd(x1, x1, acc1);
    }
    double total = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        total += a[2 * i] * a[2 * i] + a[2 * i + 1] * a[2 * i + 1];
    }
    return total;
}

void fidelity_tensor_avx2(const Complex *ket_c, const Complex *bra_c,
                          std::size_t num_qubits, std::size_t q0,
                          std::size_t q1, Complex *out) {
    const detail::PairIndexer ix(num_qubits, q0, q1);
    const double *ket = as_doubles(ket_c);
    const double *bra = as_doubles(bra_c);
    double *o = as_doubles(out);

    // ket_r * conj(bra_c) = [kr br + ki bi, ki br - kr bi]
    //                     = fmsubadd(k, dup(br), swap(k) * dup(bi)).
    if (ix.lo >= 1) {
        __m256d acc[16];
        for (auto &a : acc) {
            a = _mm256_setzero_pd();
        }
        for (std::size_t k = 0; k < ix.count; k += 2) {
            const std::size_t b = ix.base(k);
            __m256d kv[4];
            __m256d ks[4];
            __m256d br[4];
            __m256d bi[4];
            for (int c = 0; c < 4; ++c) {
                kv[c] = _mm256_loadu_pd(ket + 2 * (b + ix.offset[c]));
                ks[c] = _mm256_permute_pd(kv[c], 0b0101);
                const __m256d bv =
                    _mm256_loadu_pd(bra + 2 * (b + ix.offset[c]));
                br[c] = _mm256_movedup_pd(bv);
                bi[c] = _mm256_permute_pd(bv, 0b1111);
            }
            for (int r = 0; r < 4; ++r) {
                for (int c = 0; c < 4; ++c) {
                    const __m256d p = _mm256_fmsubadd_pd(
                        kv[r], br[c], _mm256_mul_pd(ks[r], bi[c]));
                    acc[4 * r + c] = _mm256_add_pd(acc[4 * r + c], p);
                }
            }
        }
        for (int e = 0; e < 16; ++e) {
            const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(acc[e]),
                                         _mm256_extractf128_pd(acc[e], 1));
            _mm_storeu_pd(o + 2 * e, s);
        }
        return;
    }

    __m128d acc[16];
    for (auto &a : acc) {
        a = _mm_setzero_pd();
    }
    for (std::size_t k = 0; k < ix.count; ++k) {
        const std::size_t b = ix.base(k);
        __m128d kv[4];
        __m128d ks[4];
        __m128d br[4];
        __m128d bi[4];
        for (int c = 0; c < 4; ++c) {
            kv[c] = _mm_loadu_pd(ket + 2 * (b + ix.offset[c]));
            ks[c] = _mm_permute_pd(kv[c], 0b01);
            const __m128d bv = _mm_loadu_pd(bra + 2 * (b + ix.offset[c]));
            br[c] = _mm_movedup_pd(bv);
            bi[c] = _mm_permute_pd(bv, 0b11);
        }
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                const __m128d p = _mm_fmsubadd_pd(kv[r], br[c],
                                                  _mm_mul_pd(ks[r], bi[c]));
                acc[4 * r + c] = _mm_add_pd(acc[4 * r + c], p);
            }
        }
    }
    for (int e = 0; e < 16; ++e) {
        _mm_storeu_pd(o + 2 * e, acc[e]);
    }
}

} // namespace

const KernelTable *avx2_kernels() {
    static const KernelTable table{
        "avx2",
        &apply_two_qubit_avx2,
        &inner_product_avx2,
        &norm_squared_avx2,
        &fidelity_tensor_avx2,
    };
    return &table;
}

} // namespace aqce::simd

#else

namespace aqce::simd {

const KernelTable *avx2_kernels() { return nullptr; }

} // namespace aqce::simd

#endif
