// Copyright 2026 The tot-bench Authors.
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
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace totbench {

/// Worker count: TOT_BENCH_THREADS wins over `requested`; 0 means machine
/// parallelism.
[[nodiscard]] inline auto resolve_threads(unsigned requested = 0) -> unsigned {
    if (const char* env = std::getenv("TOT_BENCH_THREADS"); env != nullptr && *env != '\0') {
        try {
            auto v = std::stoul(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::exception&) {
        }
    }
    if (requested > 0) {
        return requested;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks, one per worker, and runs
/// `fn(begin, end, worker)` on each. Chunk boundaries depend only on `n` and
/// `workers`. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_chunks(std::size_t n, unsigned workers, Fn&& fn) {
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        fn(std::size_t{0}, n, 0U);
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            std::size_t begin = n * w / workers;
            std::size_t end = n * (w + 1) / workers;
            pool.emplace_back([&, begin, end, w] {
                try {
                    fn(begin, end, w);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

/// Runs `fn(i)` for every i in [0, n) across workers.
template <typename Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
    parallel_chunks(n, workers, [&](std::size_t b, std::size_t e, unsigned) {
        for (auto i = b; i < e; ++i) {
            fn(i);
        }
    });
}

}  // namespace totbench
