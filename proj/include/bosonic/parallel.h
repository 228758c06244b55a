// Copyright 2026 The bosonic-verify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSONIC_PARALLEL_H
#define BOSONIC_PARALLEL_H

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bosonic {

/// Runs body(i) for i in [0, n) over up to `threads` workers in contiguous
/// blocks. body must only write to per-index state. The first exception
/// thrown by any worker is rethrown on the calling thread.
template <typename Body>
void parallel_for(size_t n, int threads, Body &&body) {
    size_t workers = std::clamp<size_t>(threads < 1 ? 1 : static_cast<size_t>(threads), 1, std::max<size_t>(n, 1));
    if (workers == 1) {
        for (size_t i = 0; i < n; i++) {
            body(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; w++) {
        size_t begin = n * w / workers;
        size_t end = n * (w + 1) / workers;
        pool.emplace_back([&, begin, end] {
            try {
                for (size_t i = begin; i < end; i++) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

}  // namespace bosonic

#endif
