//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/params.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <array>
#include <cstdint>

namespace qrnglab
{
//---------------------------------------------------------------------------//
//! Default truncation mass for every Poisson sum.
inline constexpr double default_tail_eps = 1e-12;

//---------------------------------------------------------------------------//
/*!
 * Converter characteristics of the sensor chip.
 *
 * The ADC output is X = gain_k * electrons + noise + adc_offset, floored and
 * clamped to [0, 2^adc_bits - 1]. Entropy symbols are assembled from the two
 * retained bit indices (LSB = index 0); the first index is the low bit of the
 * symbol.
 */
struct ChipParams
{
    double gain_k{0.8192};
    int adc_bits{10};
    double adc_offset{0.0};
    std::array<int, 2> retained_bits{2, 3};

    constexpr int z_min() const { return 0; }
    constexpr int z_max() const { return (1 << adc_bits) - 1; }
    constexpr int num_codes() const { return 1 << adc_bits; }

    // Throws DomainError when an invariant is broken
    void validate() const;
};

//---------------------------------------------------------------------------//
/*!
 * Classical noise of one pixel: Gaussian readout noise (ADU) plus Poisson
 * dark electrons. A zero sigma_r is a point mass at mu_r.
 */
struct NoiseParams
{
    double mu_r{-13.6};
    double sigma_r{0.21};
    double mu_dark{17.2};

    void validate() const;

    //! Noise that is identically zero
    static constexpr NoiseParams none() { return {0.0, 0.0, 0.0}; }
};

//! Mean photo-electron count per integration window.
struct SourceParams
{
    double mu_e{625.0};

    void validate() const;
};

//---------------------------------------------------------------------------//
// Characterized noise of the four reference pixels (labels 1..4), with mu_r
// given at the default ADC offset
NoiseParams reference_pixel_noise(int label);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
