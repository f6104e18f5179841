//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/estimators.hpp
//! Statistical checks on acquired frames and bitstreams.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sampler.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
/*!
 * Pearson coefficients between all pixel pairs.
 *
 * Entries involving a zero-variance pixel are empty rather than zero, so
 * dead pixels stay visible.
 */
struct PearsonMatrix
{
    std::size_t num_pixels{0};
    std::vector<std::optional<double>> values;  // row-major P x P
    std::vector<std::size_t> undefined_pixels;

    std::optional<double> operator()(std::size_t i, std::size_t j) const
    {
        return values[i * num_pixels + j];
    }
    // Upper-triangle coefficients that are defined
    std::vector<double> off_diagonal() const;
};

struct CorrelationReport
{
    PearsonMatrix pairwise;
    // autocorr[i][l-1] = rho_i(l); empty optional for zero-variance pixels
    std::vector<std::optional<std::vector<double>>> autocorr;
    double sigma_expected{0};  // 1/sqrt(T)
};

struct VarMeanFit
{
    double slope{0};
    double intercept{0};
    double r_squared{0};
    std::vector<double> means;
    std::vector<double> variances;
};

struct McvResult
{
    std::uint64_t num_symbols{0};
    double p_hat{0};
    double p_upper{0};
    double h_per_symbol{0};
    double h_per_bit{0};
};

//---------------------------------------------------------------------------//
// Population-normalized Pearson coefficient of every pixel pair
PearsonMatrix pearson_matrix(FrameBatch const& batch);

// rho(l) for l = 1..max_lag with the full-series mean and variance
std::optional<std::vector<double>>
autocorrelation(std::span<double const> series, std::size_t max_lag);
std::optional<std::vector<double>>
autocorrelation(FrameBatch const& batch, std::size_t pixel,
                std::size_t max_lag);

CorrelationReport correlation_report(FrameBatch const& batch,
                                     std::size_t max_lag);

/*!
 * Least-squares line through (mean, variance) of one pixel over batches
 * taken at different intensities. The slope estimates the gain.
 *
 * The batch means must span more than ten standard errors of the mean;
 * otherwise the regression is degenerate and a DomainError is thrown.
 */
VarMeanFit variance_mean_fit(std::span<FrameBatch const> batches,
                             std::size_t pixel);

/*!
 * Most-common-value min-entropy estimate on packed symbols (1 or 2 bits,
 * least significant first), with the 99% upper confidence bound on the
 * modal probability.
 */
McvResult mcv_entropy(std::span<std::uint8_t const> bits, int symbol_bits);

// Counts per code of one pixel in a batch
std::vector<double> code_histogram(FrameBatch const& batch, std::size_t pixel);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
