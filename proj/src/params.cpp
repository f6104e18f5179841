//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file params.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/params.hpp"

#include <cmath>

#include "qrnglab/errors.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
void ChipParams::validate() const
{
    require(std::isfinite(gain_k) && gain_k > 0 && gain_k <= 1,
            "gain_k must lie in (0, 1]");
    require(adc_bits >= 2 && adc_bits <= 16, "adc_bits must lie in [2, 16]");
    require(std::isfinite(adc_offset), "adc_offset must be finite");
    for (int bit : retained_bits)
    {
        require(bit >= 0 && bit < adc_bits,
                "retained bit index outside the ADC word");
    }
    require(retained_bits[0] != retained_bits[1],
            "retained bit indices must be distinct");
}

void NoiseParams::validate() const
{
    require(std::isfinite(mu_r), "mu_r must be finite");
    require(std::isfinite(sigma_r) && sigma_r >= 0,
            "sigma_r must be non-negative");
    require(std::isfinite(mu_dark) && mu_dark >= 0,
            "mu_dark must be non-negative");
}

void SourceParams::validate() const
{
    require(std::isfinite(mu_e) && mu_e >= 0, "mu_e must be non-negative");
}

NoiseParams reference_pixel_noise(int label)
{
    switch (label)
    {
        case 1:
            return {-13.6, 0.21, 17.2};
        case 2:
            return {-16.8, 0.22, 18.0};
        case 3:
            return {-14.4, 0.23, 17.2};
        case 4:
            return {-13.6, 0.21, 19.0};
        default:
            throw DomainError("reference pixel label must be 1..4");
    }
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
