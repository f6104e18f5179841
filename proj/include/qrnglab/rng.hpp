//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/rng.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>

namespace qrnglab
{
//---------------------------------------------------------------------------//
/*!
 * Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as
 * easy as 1, 2, 3", SC11).
 *
 * Maps a 128-bit counter and 64-bit key to 128 random bits. Being a pure
 * function of (counter, key), any substream can be generated independently
 * of every other one.
 */
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

//---------------------------------------------------------------------------//
/*!
 * Random stream addressed by (seed, stream id, sub id).
 *
 * The key is the 64-bit seed; counter words 1..3 hold the stream address and
 * word 0 enumerates blocks within the stream. Satisfies
 * UniformRandomBitGenerator with 64-bit output.
 */
class PhiloxStream
{
  public:
    using result_type = std::uint64_t;

    PhiloxStream(std::uint64_t seed, std::uint32_t stream, std::uint32_t sub,
                 std::uint32_t domain = 0);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()();

    //! Uniform double in the open interval (0, 1)
    double uniform();

  private:
    PhiloxKey key_;
    PhiloxCounter counter_;
    PhiloxCounter block_{};
    int used_{4};

    std::uint32_t next32();
};

//---------------------------------------------------------------------------//
// Gaussian deviate by the Box-Muller transform
double sample_normal(PhiloxStream& rng, double mean, double sigma);

/*!
 * Poisson deviate.
 *
 * Small means (< 10) use multiplication of uniforms; larger means use
 * Hormann's transformed rejection with squeeze (PTRS), which stays exact and
 * fast for means in the hundreds.
 */
std::uint64_t sample_poisson(PhiloxStream& rng, double mu);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
