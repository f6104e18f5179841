//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file rng.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/rng.hpp"

#include <cmath>
#include <numbers>

#include "qrnglab/errors.hpp"
#include "qrnglab/poisson.hpp"

namespace qrnglab
{
namespace
{
constexpr std::uint32_t philox_m0 = 0xD2511F53u;
constexpr std::uint32_t philox_m1 = 0xCD9E8D57u;
constexpr std::uint32_t philox_w0 = 0x9E3779B9u;
constexpr std::uint32_t philox_w1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                    std::uint32_t& lo)
{
    std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}
}  // namespace

//---------------------------------------------------------------------------//
PhiloxCounter philox4x32_10(PhiloxCounter c, PhiloxKey k)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            k[0] += philox_w0;
            k[1] += philox_w1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(philox_m0, c[0], hi0, lo0);
        mulhilo(philox_m1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
    return c;
}

PhiloxStream::PhiloxStream(std::uint64_t seed, std::uint32_t stream,
                           std::uint32_t sub, std::uint32_t domain)
    : key_{static_cast<std::uint32_t>(seed),
           static_cast<std::uint32_t>(seed >> 32)}
    , counter_{0, sub, stream, domain}
{
}

std::uint32_t PhiloxStream::next32()
{
    if (used_ == 4)
    {
        block_ = philox4x32_10(counter_, key_);
        ++counter_[0];
        used_ = 0;
    }
    return block_[used_++];
}

auto PhiloxStream::operator()() -> result_type
{
    std::uint64_t lo = this->next32();
    std::uint64_t hi = this->next32();
    return (hi << 32) | lo;
}

double PhiloxStream::uniform()
{
    constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
    return (static_cast<double>((*this)() >> 11) + 0.5) * scale;
}

//---------------------------------------------------------------------------//
double sample_normal(PhiloxStream& rng, double mean, double sigma)
{
    double u1 = rng.uniform();
    double u2 = rng.uniform();
    double radius = std::sqrt(-2 * std::log(u1));
    return mean + sigma * radius * std::cos(2 * std::numbers::pi * u2);
}

std::uint64_t sample_poisson(PhiloxStream& rng, double mu)
{
    require(mu >= 0 && std::isfinite(mu), "poisson mean must be non-negative");
    if (mu == 0)
        return 0;

    if (mu < 10)
    {
        double limit = std::exp(-mu);
        double prod = rng.uniform();
        std::uint64_t k = 0;
        while (prod > limit)
        {
            prod *= rng.uniform();
            ++k;
        }
        return k;
    }

    // Transformed rejection with squeeze, W. Hormann (1993)
    double const smu = std::sqrt(mu);
    double const b = 0.931 + 2.53 * smu;
    double const a = -0.059 + 0.02483 * b;
    double const inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    double const vr = 0.9277 - 3.6224 / (b - 2);

    while (true)
    {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform();
        double us = 0.5 - std::fabs(u);
        double k = std::floor((2 * a / us + b) * u + mu + 0.43);
        if (us >= 0.07 && v <= vr)
            return static_cast<std::uint64_t>(k);
        if (k < 0 || (us < 0.013 && v > us))
            continue;
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b)
            <= log_poisson_pmf(static_cast<std::int64_t>(k), mu))
        {
            return static_cast<std::uint64_t>(k);
        }
    }
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
