//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file frame_io.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/frame_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

#include "qrnglab/errors.hpp"

namespace qrnglab
{
namespace
{
void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_le(std::span<std::uint8_t const> bytes, std::size_t at,
                     int width)
{
    std::uint32_t v = 0;
    for (int i = 0; i < width; ++i)
        v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
    return v;
}
}  // namespace

//---------------------------------------------------------------------------//
std::vector<std::uint8_t> encode_frames(FrameBatch const& batch)
{
    batch.validate();
    std::vector<std::uint8_t> out;
    out.reserve(frame_header_size + 2 * batch.codes.size());
    for (char c : frame_magic)
        out.push_back(static_cast<std::uint8_t>(c));
    put_u16(out, static_cast<std::uint16_t>(batch.num_pixels));
    put_u16(out, static_cast<std::uint16_t>(batch.adc_bits));
    put_u32(out, batch.t_frames);
    for (auto code : batch.codes)
        put_u16(out, code);
    return out;
}

FrameBatch decode_frames(std::span<std::uint8_t const> bytes)
{
    if (bytes.size() < frame_header_size
        || !std::equal(std::begin(frame_magic), std::end(frame_magic),
                       bytes.begin()))
    {
        throw FormatError("not a frame file (bad magic or short header)");
    }
    FrameBatch batch;
    batch.num_pixels = get_le(bytes, 8, 2);
    batch.adc_bits = static_cast<int>(get_le(bytes, 10, 2));
    batch.t_frames = get_le(bytes, 12, 4);
    std::size_t count = static_cast<std::size_t>(batch.t_frames)
                        * batch.num_pixels;
    if (bytes.size() != frame_header_size + 2 * count)
        throw FormatError("frame file size does not match its header");
    batch.codes.resize(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        batch.codes[i] = static_cast<std::uint16_t>(
            get_le(bytes, frame_header_size + 2 * i, 2));
    }
    try
    {
        batch.validate();
    }
    catch (DomainError const& e)
    {
        throw FormatError(std::string("invalid frame file: ") + e.what());
    }
    return batch;
}

void write_bytes(std::string const& path, std::span<std::uint8_t const> bytes)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out.write(reinterpret_cast<char const*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("failed writing " + path);
}

std::vector<std::uint8_t> read_bytes(std::string const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path + " for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("failed reading " + path);
    return bytes;
}

void write_frames(std::string const& path, FrameBatch const& batch)
{
    auto bytes = encode_frames(batch);
    write_bytes(path, bytes);
}

FrameBatch read_frames(std::string const& path)
{
    auto bytes = read_bytes(path);
    return decode_frames(bytes);
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
