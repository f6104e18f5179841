//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tools/config.hpp
//! Run configuration for the qrng-lab command line tool.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qrnglab/qrnglab.h"

namespace qrnglab::cli
{
//---------------------------------------------------------------------------//
//! Rejected configuration; the message starts with a JSON pointer.
class ConfigError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//---------------------------------------------------------------------------//
struct PixelSpec
{
    double mu_e{0};
    qrng_noise_params noise{};
};

//---------------------------------------------------------------------------//
/*!
 * Declarative run configuration.
 *
 * Every field has a default, so an empty document is valid. Defaults model
 * the reference chip: K = 0.8192, 10-bit converter, pixel 1 noise, 64 pixels.
 */
struct RunConfig
{
    qrng_chip_params chip{};
    qrng_noise_params noise{};
    double mu_e{625};

    // Array: either uniform (num_pixels copies of mu_e/noise) or explicit
    std::size_t num_pixels{64};
    std::vector<PixelSpec> per_pixel;
    std::vector<double> efficiency;

    std::vector<double> grid;
    std::uint64_t seed{1};
    std::uint32_t frames{10000};
    std::size_t max_lag{100};
    int symbol_bits{2};
    double tail_eps{1e-12};

    qrng_quadrature quad{};
    qrng_health_config health{};
    qrng_fit_options fit{};
    double fit_shift_steps{0};

    // Output paths; empty means "use the command-line flag or stdout"
    std::string out_csv;
    std::string out_json;
    std::string out_frames;
    std::string out_bits;

    RunConfig();

    std::vector<PixelSpec> pixels() const;
    nlohmann::json to_json() const;
    std::uint64_t digest() const;
};

// has_grid (optional) reports whether the document sets "grid"
RunConfig load_config(std::string const& path, bool* has_grid = nullptr);
RunConfig parse_config(nlohmann::json const& doc, bool* has_grid = nullptr);

std::vector<double> parse_grid(std::string const& text);
std::string hex_digest(std::uint64_t value);
std::uint64_t fnv1a(std::string const& bytes);

//---------------------------------------------------------------------------//
}  // namespace qrnglab::cli
