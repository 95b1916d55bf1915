// Copyright 2026 The thermoqbe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

/// @file
/// Deterministic data-parallel loop.
///
/// Every index is evaluated by exactly one worker and writes only its own
/// output slot, so results are bit-identical for any worker count.

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace thermoqbe {

/// Worker count from the THERMOQBE_WORKERS environment variable, or
/// `fallback` when it is unset or not a positive integer.
unsigned workers_from_env(unsigned fallback);

template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn)
{
    workers = std::max(1u, workers);
    if (workers == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    const std::size_t nw = std::min<std::size_t>(workers, n);
    // The error reported is the one raised at the lowest index, independent of scheduling.
    std::exception_ptr first_error;
    std::size_t first_index = n;
    std::mutex error_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t begin = n * w / nw;
            const std::size_t end = n * (w + 1) / nw;
            std::size_t i = begin;
            try {
                for (; i < end; ++i)
                    fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (i < first_index) {
                    first_index = i;
                    first_error = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (first_error)
        std::rethrow_exception(first_error);
}

} // namespace thermoqbe
