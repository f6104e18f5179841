//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_parallel.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"

using namespace qrnglab;

TEST_SUITE("parallel")
{
    TEST_CASE("thread count follows the environment")
    {
        ::setenv("QRNG_LAB_THREADS", "3", 1);
        CHECK(thread_count() == 3);
        ::setenv("QRNG_LAB_THREADS", "junk", 1);
        CHECK(thread_count() >= 1);
        ::unsetenv("QRNG_LAB_THREADS");
        CHECK(thread_count() >= 1);
    }

    TEST_CASE("every index runs once")
    {
        ::setenv("QRNG_LAB_THREADS", "4", 1);
        std::vector<std::atomic<int>> hits(1000);
        parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
        for (auto const& h : hits)
            CHECK(h.load() == 1);
        parallel_for(0, [](std::size_t) { FAIL("no work expected"); });
        ::unsetenv("QRNG_LAB_THREADS");
    }

    TEST_CASE("lowest failing index wins")
    {
        for (char const* threads : {"1", "4"})
        {
            ::setenv("QRNG_LAB_THREADS", threads, 1);
            std::string what;
            try
            {
                parallel_for(200, [](std::size_t i) {
                    if (i == 37 || i == 150 || i == 199)
                        throw std::runtime_error(std::to_string(i));
                });
            }
            catch (std::runtime_error const& e)
            {
                what = e.what();
            }
            CHECK(what == "37");
        }
        ::unsetenv("QRNG_LAB_THREADS");
    }
}
