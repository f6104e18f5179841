//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file parallel.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qrnglab
{
//---------------------------------------------------------------------------//
std::size_t thread_count()
{
    if (char const* env = std::getenv("QRNG_LAB_THREADS"))
    {
        try
        {
            long value = std::stol(env);
            if (value > 0)
                return static_cast<std::size_t>(value);
        }
        catch (std::exception const&)
        {
            // Malformed value: fall through to the hardware count
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::function<void(std::size_t)> const& fn)
{
    std::size_t workers = std::min(thread_count(), n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;

    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                fn(i);
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (i < error_index)
                {
                    error_index = i;
                    error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    for (auto& thread : pool)
        thread.join();

    if (error)
        std::rethrow_exception(error);
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
