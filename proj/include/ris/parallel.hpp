// SPDX-License-Identifier: Apache-2.0
//
// ris-channel: physics-based channel modelling for reconfigurable surfaces
// Copyright (C) 2026 The ris-channel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RIS_PARALLEL_HPP
#define RIS_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ris
{
    /// Number of worker threads used by parallel_for. 0 selects std::thread::hardware_concurrency().
    inline std::size_t &worker_threads() noexcept
    {
        static std::size_t n = 0;
        return n;
    }

    /// Calls body(i) for every i in [0, n), split into contiguous blocks over worker threads.
    /// body must only write state owned by index i. The first exception thrown by any block is rethrown.
    template <class Body>
    void parallel_for(std::size_t n, Body &&body)
    {
        std::size_t threads = worker_threads();
        if (threads == 0)
            threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
        threads = std::min(threads, n);
        if (threads <= 1)
        {
            for (std::size_t i = 0; i < n; ++i)
                body(i);
            return;
        }

        std::exception_ptr failure;
        std::mutex failure_lock;
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::size_t block = (n + threads - 1) / threads;
        for (std::size_t t = 0; t < threads; ++t)
        {
            const std::size_t lo = t * block;
            const std::size_t hi = std::min(n, lo + block);
            pool.emplace_back([&, lo, hi]
                              {
                try
                {
                    for (std::size_t i = lo; i < hi; ++i)
                        body(i);
                }
                catch (...)
                {
                    std::lock_guard<std::mutex> guard(failure_lock);
                    if (!failure)
                        failure = std::current_exception();
                } });
        }
        for (auto &th : pool)
            th.join();
        if (failure)
            std::rethrow_exception(failure);
    }
}

#endif
