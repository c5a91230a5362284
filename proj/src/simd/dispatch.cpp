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

#include <atomic>
#include <cstdlib>
#include <string_view>

#include "aqce/simd/kernels.hpp"

namespace aqce::simd {

namespace {

bool cpu_has_avx2_fma() {
#if (defined(__x86_64__) || defined(__i386__)) && \
    (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable *select_initial() {
    const char *env = std::getenv("AQCE_KERNELS");
    if (env != nullptr && std::string_view(env) == "scalar") {
        return &scalar_kernels();
    }
    if (avx2_available()) {
        return avx2_kernels();
    }
    return &scalar_kernels();
}

std::atomic<const KernelTable *> &active_slot() {
    static std::atomic<const KernelTable *> slot{select_initial()};
    return slot;
}

} // namespace

bool avx2_available() {
    static const bool ok = avx2_kernels() != nullptr && cpu_has_avx2_fma();
    return ok;
}

const KernelTable &active_kernels() {
    return *active_slot().load(std::memory_order_acquire);
}

void set_active_kernels(KernelKind kind) {
    switch (kind) {
    case KernelKind::kScalar:
        active_slot().store(&scalar_kernels(), std::memory_order_release);
        return;
    case KernelKind::kAvx2:
        if (!avx2_available()) {
            throw InputError("AVX2 kernels are not available on this machine");
        }
        active_slot().store(avx2_kernels(), std::memory_order_release);
        return;
    }
}

} // namespace aqce::simd
