//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/frame_io.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sampler.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
/*!
 * Binary frame file.
 *
 * 16-byte little-endian header: magic "QRNGFRM1", u16 pixel count, u16 ADC
 * bits, u32 frame count; then T*P codes as little-endian u16, frame-major.
 */
inline constexpr char frame_magic[8] = {'Q', 'R', 'N', 'G', 'F', 'R', 'M', '1'};
inline constexpr std::size_t frame_header_size = 16;

std::vector<std::uint8_t> encode_frames(FrameBatch const& batch);
// Seed and model digest are not stored and come back as zero
FrameBatch decode_frames(std::span<std::uint8_t const> bytes);

void write_frames(std::string const& path, FrameBatch const& batch);
FrameBatch read_frames(std::string const& path);

void write_bytes(std::string const& path, std::span<std::uint8_t const> bytes);
std::vector<std::uint8_t> read_bytes(std::string const& path);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
