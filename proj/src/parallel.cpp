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

#include "aqce/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace aqce {

namespace {

std::size_t hardware_threads() {
    const unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

std::atomic<std::size_t> &thread_slot() {
    static std::atomic<std::size_t> slot{hardware_threads()};
    return slot;
}

// Nested parallel_for calls run serially inside a worker.
thread_local bool in_parallel_region = false;

} // namespace

void set_thread_count(std::size_t n) {
    thread_slot().store(n == 0 ? hardware_threads() : n);
}

std::size_t thread_count() { return thread_slot().load(); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t)> &body) {
    const std::size_t workers =
        in_parallel_region ? 1 : std::min(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t k = 0; k < n; ++k) {
            body(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    const auto run = [&] {
        const bool outer = in_parallel_region;
        in_parallel_region = true;
        struct Reset {
            bool value;
            ~Reset() { in_parallel_region = value; }
        } reset{outer};
        while (true) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n) {
                return;
            }
            try {
                body(k);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 0; w + 1 < workers; ++w) {
        pool.emplace_back(run);
    }
    run();
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace aqce
