// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace poissinc
{

//! Run fn(i) for i in [0, count) on up to `workers` threads.
//!
//! Work items are claimed dynamically, so callers must write results into
//! per-index slots and reduce afterwards in index order. The exception of
//! the lowest failing index is rethrown.
template<class F>
void parallel_for(std::size_t count, unsigned workers, F&& fn)
{
    if (workers <= 1 || count <= 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_index = count;

    auto body = [&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (i < first_error_index)
                {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::size_t const nthreads = std::min<std::size_t>(workers, count);
    std::vector<std::thread> pool;
    pool.reserve(nthreads - 1);
    for (std::size_t t = 1; t < nthreads; ++t)
        pool.emplace_back(body);
    body();
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
}

}  // namespace poissinc
