//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file estimators.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qrnglab/errors.hpp"
#include "qrnglab/parallel.hpp"

namespace qrnglab
{
namespace
{
//---------------------------------------------------------------------------//
struct Moments
{
    double mean{0};
    double variance{0};  // population
};

Moments moments(std::span<double const> x)
{
    Moments m;
    for (double v : x)
        m.mean += v;
    m.mean /= static_cast<double>(x.size());
    for (double v : x)
        m.variance += (v - m.mean) * (v - m.mean);
    m.variance /= static_cast<double>(x.size());
    return m;
}

double clamp_unit(double rho)
{
    return std::clamp(rho, -1.0, 1.0);
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
std::vector<double> PearsonMatrix::off_diagonal() const
{
    std::vector<double> result;
    for (std::size_t i = 0; i < num_pixels; ++i)
    {
        for (std::size_t j = i + 1; j < num_pixels; ++j)
        {
            if (auto rho = (*this)(i, j))
                result.push_back(*rho);
        }
    }
    return result;
}

PearsonMatrix pearson_matrix(FrameBatch const& batch)
{
    batch.validate();
    require(batch.t_frames >= 2, "correlation needs at least two frames");

    std::size_t const num_pixels = batch.num_pixels;
    std::size_t const t_frames = batch.t_frames;

    // Centered, scaled series; empty for zero-variance pixels
    std::vector<std::vector<double>> scaled(num_pixels);
    PearsonMatrix result;
    result.num_pixels = num_pixels;
    for (std::size_t p = 0; p < num_pixels; ++p)
    {
        auto series = batch.pixel_series(p);
        auto m = moments(series);
        if (!(m.variance > 0))
        {
            result.undefined_pixels.push_back(p);
            continue;
        }
        double inv = 1 / std::sqrt(m.variance);
        for (double& v : series)
            v = (v - m.mean) * inv;
        scaled[p] = std::move(series);
    }

    result.values.assign(num_pixels * num_pixels, std::nullopt);
    parallel_for(num_pixels, [&](std::size_t i) {
        if (scaled[i].empty())
            return;
        result.values[i * num_pixels + i] = 1.0;
        for (std::size_t j = i + 1; j < num_pixels; ++j)
        {
            if (scaled[j].empty())
                continue;
            double sum = 0;
            for (std::size_t t = 0; t < t_frames; ++t)
                sum += scaled[i][t] * scaled[j][t];
            double rho = clamp_unit(sum / static_cast<double>(t_frames));
            result.values[i * num_pixels + j] = rho;
        }
    });
    // Mirror after the parallel pass so each task writes only its own row
    for (std::size_t i = 0; i < num_pixels; ++i)
        for (std::size_t j = i + 1; j < num_pixels; ++j)
            result.values[j * num_pixels + i] = result.values[i * num_pixels + j];
    return result;
}

std::optional<std::vector<double>>
autocorrelation(std::span<double const> series, std::size_t max_lag)
{
    require(max_lag >= 1, "max_lag must be positive");
    require(max_lag < series.size(), "max_lag must be below the series length");
    auto m = moments(series);
    if (!(m.variance > 0))
        return std::nullopt;

    std::size_t const t_frames = series.size();
    std::vector<double> rho(max_lag);
    for (std::size_t lag = 1; lag <= max_lag; ++lag)
    {
        double sum = 0;
        for (std::size_t t = 0; t + lag < t_frames; ++t)
            sum += (series[t] - m.mean) * (series[t + lag] - m.mean);
        rho[lag - 1] = clamp_unit(
            sum / static_cast<double>(t_frames - lag) / m.variance);
    }
    return rho;
}

std::optional<std::vector<double>>
autocorrelation(FrameBatch const& batch, std::size_t pixel, std::size_t max_lag)
{
    auto series = batch.pixel_series(pixel);
    return autocorrelation(series, max_lag);
}

CorrelationReport correlation_report(FrameBatch const& batch,
                                     std::size_t max_lag)
{
    require(max_lag < batch.t_frames, "max_lag must be below the frame count");
    CorrelationReport report;
    report.pairwise = pearson_matrix(batch);
    report.autocorr.resize(batch.num_pixels);
    parallel_for(batch.num_pixels, [&](std::size_t p) {
        report.autocorr[p] = autocorrelation(batch, p, max_lag);
    });
    report.sigma_expected = 1 / std::sqrt(static_cast<double>(batch.t_frames));
    return report;
}

VarMeanFit variance_mean_fit(std::span<FrameBatch const> batches,
                             std::size_t pixel)
{
    require(batches.size() >= 3, "variance-mean fit needs at least 3 batches");

    VarMeanFit fit;
    double max_sem = 0;
    for (auto const& batch : batches)
    {
        require(batch.t_frames >= 2, "each batch needs at least two frames");
        auto series = batch.pixel_series(pixel);
        auto m = moments(series);
        double n = static_cast<double>(series.size());
        double sample_var = m.variance * n / (n - 1);
        fit.means.push_back(m.mean);
        fit.variances.push_back(sample_var);
        max_sem = std::max(max_sem, std::sqrt(sample_var / n));
    }

    auto [lo, hi] = std::minmax_element(fit.means.begin(), fit.means.end());
    require(*hi - *lo > 10 * max_sem && *hi > *lo,
            "batch means do not span a usable intensity range");

    double const n = static_cast<double>(fit.means.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < fit.means.size(); ++i)
    {
        mx += fit.means[i];
        my += fit.variances[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < fit.means.size(); ++i)
    {
        double dx = fit.means[i] - mx;
        double dy = fit.variances[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0)
                            : 1.0;
    return fit;
}

McvResult mcv_entropy(std::span<std::uint8_t const> bits, int symbol_bits)
{
    require(!bits.empty(), "MCV estimate needs a non-empty input");
    require(symbol_bits == 1 || symbol_bits == 2, "symbol_bits must be 1 or 2");

    std::array<std::uint64_t, 4> counts{0, 0, 0, 0};
    int const per_byte = 8 / symbol_bits;
    std::uint8_t const mask = static_cast<std::uint8_t>((1 << symbol_bits) - 1);
    for (std::uint8_t byte : bits)
    {
        for (int s = 0; s < per_byte; ++s)
            ++counts[(byte >> (s * symbol_bits)) & mask];
    }

    McvResult result;
    result.num_symbols = static_cast<std::uint64_t>(bits.size()) * per_byte;
    double const length = static_cast<double>(result.num_symbols);
    auto max_count = *std::max_element(counts.begin(), counts.end());
    result.p_hat = static_cast<double>(max_count) / length;
    result.p_upper = std::min(
        1.0, result.p_hat
                 + 2.576
                       * std::sqrt(result.p_hat * (1 - result.p_hat)
                                   / (length - 1)));
    result.h_per_symbol = -std::log2(result.p_upper);
    if (result.h_per_symbol == 0)
        result.h_per_symbol = 0;
    result.h_per_bit = result.h_per_symbol / symbol_bits;
    return result;
}

std::vector<double> code_histogram(FrameBatch const& batch, std::size_t pixel)
{
    require(pixel < batch.num_pixels, "pixel index out of range");
    std::vector<double> counts(std::size_t{1} << batch.adc_bits, 0.0);
    for (std::size_t t = 0; t < batch.t_frames; ++t)
        counts[batch.at(t, pixel)] += 1;
    return counts;
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
