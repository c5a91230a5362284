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

#include <cstddef>
#include <functional>

namespace aqce {

/// Worker cap for parallel_for; 0 restores the hardware default.
void set_thread_count(std::size_t n);
[[nodiscard]] std::size_t thread_count();

/**
 * Runs body(k) for k in [0, n). Items are independent; callers reduce the
 * per-item results in index order afterwards, so the outcome never depends
 * on scheduling. The first exception thrown by any item is rethrown.
 * Calls made from inside a running body execute serially.
 */
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace aqce
