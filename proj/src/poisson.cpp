//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file poisson.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/poisson.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "qrnglab/errors.hpp"

namespace qrnglab
{
namespace
{
//---------------------------------------------------------------------------//
// Remainder of Stirling's series: log(n!) - log(sqrt(2 pi n) (n/e)^n)
double stirling_remainder(double n)
{
    if (n <= 15)
    {
        // Direct difference in extended precision is exact enough here;
        // log(n!) as a sum of logs avoids lgamma's global sign state
        long double x = n;
        long double log_fact = 0;
        for (int i = 2; i <= static_cast<int>(n); ++i)
            log_fact += std::log(static_cast<long double>(i));
        long double r = log_fact - (x + 0.5L) * std::log(x) + x
                        - 0.5L * std::log(2 * std::numbers::pi_v<long double>);
        return static_cast<double>(r);
    }
    constexpr double s0 = 1.0 / 12;
    constexpr double s1 = 1.0 / 360;
    constexpr double s2 = 1.0 / 1260;
    constexpr double s3 = 1.0 / 1680;
    constexpr double s4 = 1.0 / 1188;
    double nn = n * n;
    if (n > 500)
        return (s0 - s1 / nn) / n;
    if (n > 80)
        return (s0 - (s1 - s2 / nn) / nn) / n;
    if (n > 35)
        return (s0 - (s1 - (s2 - s3 / nn) / nn) / nn) / n;
    return (s0 - (s1 - (s2 - (s3 - s4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x log(x/np) + np - x, evaluated without cancellation
double deviance(double x, double np)
{
    if (std::fabs(x - np) < 0.1 * (x + np))
    {
        double v = (x - np) / (x + np);
        double s = (x - np) * v;
        double ej = 2 * x * v;
        double v2 = v * v;
        for (int j = 1; j < 1000; ++j)
        {
            ej *= v2;
            double next = s + ej / (2 * j + 1);
            if (next == s)
                return next;
            s = next;
        }
        return s;
    }
    return x * std::log(x / np) + np - x;
}

void check_args(std::int64_t n, double mu)
{
    require(n >= 0, "poisson count must be non-negative");
    require(mu >= 0 && std::isfinite(mu), "poisson mean must be non-negative");
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
double log_poisson_pmf(std::int64_t n, double mu)
{
    check_args(n, mu);
    if (mu == 0)
    {
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    if (n == 0)
    {
        return -mu;
    }
    double x = static_cast<double>(n);
    return -stirling_remainder(x) - deviance(x, mu)
           - 0.5 * std::log(2 * std::numbers::pi * x);
}

double poisson_pmf(std::int64_t n, double mu)
{
    return std::exp(log_poisson_pmf(n, mu));
}

CountRange truncated_poisson_support(double mu, double tail_eps)
{
    require(mu >= 0 && std::isfinite(mu), "poisson mean must be non-negative");
    require(tail_eps > 0 && tail_eps < 1, "tail_eps must lie in (0, 1)");

    auto mode = static_cast<std::int64_t>(std::floor(mu));
    CountRange range{mode, mode};
    double captured = poisson_pmf(mode, mu);
    double below = mode > 0 ? poisson_pmf(mode - 1, mu) : 0.0;
    double above = poisson_pmf(mode + 1, mu);

    while (1 - captured > tail_eps)
    {
        if (below == 0 && above == 0)
        {
            // Remaining mass is beneath double resolution
            break;
        }
        if (below >= above)
        {
            captured += below;
            --range.lo;
            below = range.lo > 0 ? poisson_pmf(range.lo - 1, mu) : 0.0;
        }
        else
        {
            captured += above;
            ++range.hi;
            above = poisson_pmf(range.hi + 1, mu);
        }
    }
    return range;
}

std::vector<double> poisson_weights(double mu, CountRange range)
{
    std::vector<double> result;
    result.reserve(static_cast<std::size_t>(range.size()));
    for (std::int64_t n = range.lo; n <= range.hi; ++n)
    {
        result.push_back(poisson_pmf(n, mu));
    }
    return result;
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
