//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/sampler.hpp
//! Seeded synthetic acquisition of sensor frames.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "params.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
struct PixelModel
{
    SourceParams source;
    NoiseParams noise;
};

//! Pixel array sharing one converter.
struct ArrayModel
{
    ChipParams chip;
    std::vector<PixelModel> pixels;

    static ArrayModel uniform(ChipParams const& chip, std::size_t num_pixels,
                              SourceParams const& source,
                              NoiseParams const& noise);

    void validate() const;
};

// Content hash (FNV-1a, 64 bit) of every parameter of the model
std::uint64_t model_digest(ArrayModel const& model);

//---------------------------------------------------------------------------//
/*!
 * T frames by P pixels of ADC codes, stored frame-major.
 */
struct FrameBatch
{
    std::uint32_t t_frames{0};
    std::uint32_t num_pixels{0};
    int adc_bits{10};
    std::uint64_t seed{0};
    std::uint64_t model_digest{0};
    std::vector<std::uint16_t> codes;

    std::uint16_t at(std::size_t frame, std::size_t pixel) const
    {
        return codes[frame * num_pixels + pixel];
    }
    std::span<std::uint16_t const> frame(std::size_t t) const
    {
        return {codes.data() + t * num_pixels, num_pixels};
    }
    // Time series of one pixel
    std::vector<double> pixel_series(std::size_t pixel) const;

    void validate() const;
};

// FNV-1a hash of the batch dimensions and codes
std::uint64_t batch_hash(FrameBatch const& batch);

/*!
 * Draw T frames from the generative chain of every pixel.
 *
 * Each (pixel, frame) pair owns a Philox substream keyed by the seed, so the
 * batch is identical for any thread count or evaluation order.
 */
FrameBatch sample_frames(ArrayModel const& model, std::uint32_t t_frames,
                         std::uint64_t seed);

/*!
 * Pack the retained 2-bit symbols frame-major, pixel-minor, four per byte,
 * the first symbol in the two least significant bits. A trailing partial
 * byte is zero-padded in its high bits.
 */
std::vector<std::uint8_t> export_bitstream(FrameBatch const& batch,
                                           ChipParams const& chip);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
