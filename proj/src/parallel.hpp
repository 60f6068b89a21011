// noma-sim: system-level simulator for large-scale power-domain NOMA
// Copyright (C) 2026 The noma-sim authors
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

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace noma::detail
{

inline unsigned resolve_workers(unsigned requested)
{
    if (requested != 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Number of threads parallel_for will use; worker ids are below this.
inline unsigned effective_workers(std::size_t tasks, unsigned requested)
{
    return static_cast<unsigned>(std::min<std::size_t>(resolve_workers(requested), std::max<std::size_t>(tasks, 1)));
}

/// Calls fn(task, worker) for every task in [0, tasks). Tasks are handed out
/// dynamically; callers must make each task's output depend on the task index
/// only. The first exception thrown by any task is rethrown here.
template <class Fn>
void parallel_for(std::size_t tasks, unsigned workers, Fn&& fn)
{
    const unsigned n = effective_workers(tasks, workers);
    if (n <= 1)
    {
        for (std::size_t task = 0; task < tasks; ++task)
            fn(task, 0u);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto run = [&](unsigned worker) {
        for (;;)
        {
            const std::size_t task = next.fetch_add(1, std::memory_order_relaxed);
            if (task >= tasks || failed.load(std::memory_order_relaxed))
                return;
            try
            {
                fn(task, worker);
            }
            catch (...)
            {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                failed = true;
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(n - 1);
    for (unsigned w = 1; w < n; ++w)
        pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace noma::detail
