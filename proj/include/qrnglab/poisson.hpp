//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/poisson.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <vector>

namespace qrnglab
{
//---------------------------------------------------------------------------//
//! Inclusive range of counts.
struct CountRange
{
    std::int64_t lo{0};
    std::int64_t hi{0};

    std::int64_t size() const { return hi - lo + 1; }
};

//---------------------------------------------------------------------------//
/*!
 * Poisson probability mu^n e^-mu / n!.
 *
 * Uses Loader's saddle-point form (Stirling remainder plus the deviance
 * term) so that large arguments such as n ~ 800, mu ~ 625 keep full relative
 * precision.
 */
double poisson_pmf(std::int64_t n, double mu);

//! Natural log of poisson_pmf (-inf for impossible counts)
double log_poisson_pmf(std::int64_t n, double mu);

/*!
 * Smallest contiguous count range whose complement has Poisson mass at most
 * tail_eps.
 *
 * Grown outward from the mode, always absorbing the heavier neighbor, which
 * is optimal for a unimodal pmf.
 */
CountRange truncated_poisson_support(double mu, double tail_eps);

//! Poisson probabilities over a range, index 0 corresponding to range.lo
std::vector<double> poisson_weights(double mu, CountRange range);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
