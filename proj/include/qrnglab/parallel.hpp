//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/parallel.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <functional>

namespace qrnglab
{
//---------------------------------------------------------------------------//
// Worker count: QRNG_LAB_THREADS if set and positive, else hardware threads
std::size_t thread_count();

/*!
 * Run fn(i) for i in [0, n) on up to thread_count() threads.
 *
 * Work items must write only to their own outputs. If any item throws, the
 * exception from the lowest failing index is rethrown after all workers
 * join, so the reported error does not depend on scheduling.
 */
void parallel_for(std::size_t n, std::function<void(std::size_t)> const& fn);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
