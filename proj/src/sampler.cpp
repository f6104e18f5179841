//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file sampler.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/sampler.hpp"

#include <bit>
#include <cstring>

#include "qrnglab/core_model.hpp"
#include "qrnglab/errors.hpp"
#include "qrnglab/parallel.hpp"
#include "qrnglab/rng.hpp"

namespace qrnglab
{
namespace
{
//---------------------------------------------------------------------------//
class Fnv1a
{
  public:
    void bytes(void const* data, std::size_t size)
    {
        auto const* p = static_cast<unsigned char const*>(data);
        for (std::size_t i = 0; i < size; ++i)
        {
            hash_ ^= p[i];
            hash_ *= 0x100000001b3ull;
        }
    }
    // Little-endian encoding regardless of host order
    void u64(std::uint64_t value)
    {
        unsigned char buf[8];
        for (int i = 0; i < 8; ++i)
            buf[i] = static_cast<unsigned char>(value >> (8 * i));
        this->bytes(buf, 8);
    }
    void real(double value) { this->u64(std::bit_cast<std::uint64_t>(value)); }

    std::uint64_t value() const { return hash_; }

  private:
    std::uint64_t hash_{0xcbf29ce484222325ull};
};

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
ArrayModel ArrayModel::uniform(ChipParams const& chip, std::size_t num_pixels,
                               SourceParams const& source,
                               NoiseParams const& noise)
{
    ArrayModel model;
    model.chip = chip;
    model.pixels.assign(num_pixels, PixelModel{source, noise});
    return model;
}

void ArrayModel::validate() const
{
    chip.validate();
    require(!pixels.empty(), "array model needs at least one pixel");
    require(pixels.size() <= 0xFFFF, "array model is limited to 65535 pixels");
    for (auto const& pixel : pixels)
    {
        pixel.source.validate();
        pixel.noise.validate();
    }
}

std::uint64_t model_digest(ArrayModel const& model)
{
    Fnv1a h;
    char const tag[] = "qrnglab-array-model-v1";
    h.bytes(tag, sizeof(tag) - 1);
    h.real(model.chip.gain_k);
    h.u64(static_cast<std::uint64_t>(model.chip.adc_bits));
    h.real(model.chip.adc_offset);
    h.u64(static_cast<std::uint64_t>(model.chip.retained_bits[0]));
    h.u64(static_cast<std::uint64_t>(model.chip.retained_bits[1]));
    h.u64(model.pixels.size());
    for (auto const& pixel : model.pixels)
    {
        h.real(pixel.source.mu_e);
        h.real(pixel.noise.mu_r);
        h.real(pixel.noise.sigma_r);
        h.real(pixel.noise.mu_dark);
    }
    return h.value();
}

//---------------------------------------------------------------------------//
std::vector<double> FrameBatch::pixel_series(std::size_t pixel) const
{
    require(pixel < num_pixels, "pixel index out of range");
    std::vector<double> series(t_frames);
    for (std::size_t t = 0; t < t_frames; ++t)
        series[t] = this->at(t, pixel);
    return series;
}

void FrameBatch::validate() const
{
    require(t_frames >= 1 && num_pixels >= 1, "batch must be non-empty");
    require(adc_bits >= 2 && adc_bits <= 16, "adc_bits must lie in [2, 16]");
    require(codes.size()
                == static_cast<std::size_t>(t_frames) * num_pixels,
            "batch code count does not match its dimensions");
    std::uint32_t const z_max = (1u << adc_bits) - 1;
    for (auto code : codes)
        require(code <= z_max, "batch contains a code above z_max");
}

std::uint64_t batch_hash(FrameBatch const& batch)
{
    Fnv1a h;
    h.u64(batch.t_frames);
    h.u64(batch.num_pixels);
    h.u64(static_cast<std::uint64_t>(batch.adc_bits));
    for (auto code : batch.codes)
    {
        unsigned char buf[2] = {static_cast<unsigned char>(code & 0xFF),
                                static_cast<unsigned char>(code >> 8)};
        h.bytes(buf, 2);
    }
    return h.value();
}

FrameBatch sample_frames(ArrayModel const& model, std::uint32_t t_frames,
                         std::uint64_t seed)
{
    model.validate();
    require(t_frames >= 1, "t_frames must be at least 1");

    FrameBatch batch;
    batch.t_frames = t_frames;
    batch.num_pixels = static_cast<std::uint32_t>(model.pixels.size());
    batch.adc_bits = model.chip.adc_bits;
    batch.seed = seed;
    batch.model_digest = model_digest(model);
    batch.codes.resize(static_cast<std::size_t>(t_frames) * batch.num_pixels);

    ChipParams const& chip = model.chip;
    parallel_for(model.pixels.size(), [&](std::size_t p) {
        auto const& pixel = model.pixels[p];
        for (std::uint32_t t = 0; t < t_frames; ++t)
        {
            PhiloxStream rng(seed, static_cast<std::uint32_t>(p), t);
            auto n_ph = sample_poisson(rng, pixel.source.mu_e);
            auto n_dark = sample_poisson(rng, pixel.noise.mu_dark);
            double readout = pixel.noise.sigma_r > 0
                                 ? sample_normal(rng, pixel.noise.mu_r,
                                                 pixel.noise.sigma_r)
                                 : pixel.noise.mu_r;
            double x = chip.gain_k * static_cast<double>(n_ph + n_dark)
                       + readout + chip.adc_offset;
            batch.codes[static_cast<std::size_t>(t) * batch.num_pixels + p]
                = static_cast<std::uint16_t>(quantize(x, chip));
        }
    });
    return batch;
}

std::vector<std::uint8_t> export_bitstream(FrameBatch const& batch,
                                           ChipParams const& chip)
{
    chip.validate();
    require(batch.adc_bits == chip.adc_bits,
            "batch and chip disagree on adc_bits");
    std::vector<std::uint8_t> bytes((batch.codes.size() + 3) / 4, 0);
    for (std::size_t i = 0; i < batch.codes.size(); ++i)
    {
        auto symbol = static_cast<std::uint8_t>(
            extract_symbol(batch.codes[i], chip));
        bytes[i / 4] |= static_cast<std::uint8_t>(symbol << (2 * (i % 4)));
    }
    return bytes;
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
