//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file health.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/health.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "qrnglab/errors.hpp"
#include "qrnglab/parallel.hpp"

namespace qrnglab
{
namespace
{
//---------------------------------------------------------------------------//
struct Tails
{
    double below{0};
    double above{0};
};

Tails window_tails(Pmf const& pmf, HealthConfig const& cfg)
{
    Tails t;
    for (std::int64_t z = pmf.first(); z <= pmf.last(); ++z)
    {
        if (z < cfg.t_minus)
            t.below += pmf(z);
        else if (z > cfg.t_plus)
            t.above += pmf(z);
    }
    return t;
}

using PixelKey = std::tuple<double, double, double, double>;

PixelKey key_of(PixelModel const& pixel)
{
    return {pixel.source.mu_e, pixel.noise.mu_r, pixel.noise.sigma_r,
            pixel.noise.mu_dark};
}

//---------------------------------------------------------------------------//
}  // namespace

//---------------------------------------------------------------------------//
void HealthConfig::validate(ChipParams const& chip) const
{
    require(t_minus >= 0 && t_minus < t_plus && t_plus <= chip.z_max(),
            "thresholds must satisfy 0 <= t_minus < t_plus <= z_max");
    require(n_minus_max >= 0 && n_plus_max >= 0,
            "count bounds must be non-negative");
    require(epsilon >= 0 && epsilon <= 1, "epsilon must lie in [0, 1]");
}

FrameVerdict judge_frame(std::span<std::uint16_t const> frame,
                         HealthConfig const& cfg)
{
    FrameVerdict verdict;
    for (auto code : frame)
    {
        if (code < cfg.t_minus)
            ++verdict.n_minus;
        else if (code > cfg.t_plus)
            ++verdict.n_plus;
    }
    verdict.failed = verdict.n_minus > cfg.n_minus_max
                     || verdict.n_plus > cfg.n_plus_max;
    return verdict;
}

FailureProbability failure_probability(std::span<double const> q_minus,
                                       std::span<double const> q_plus,
                                       HealthConfig const& cfg)
{
    require(q_minus.size() == q_plus.size(),
            "per-pixel tail probabilities must have equal length");
    require(cfg.n_minus_max >= 0 && cfg.n_plus_max >= 0,
            "count bounds must be non-negative");

    // state[a][b]: probability of a codes below and b above so far; the
    // last index in each direction absorbs every count beyond the bound
    std::size_t const rows = static_cast<std::size_t>(cfg.n_minus_max) + 2;
    std::size_t const cols = static_cast<std::size_t>(cfg.n_plus_max) + 2;
    std::vector<double> state(rows * cols, 0.0);
    std::vector<double> next(rows * cols);
    state[0] = 1;

    for (std::size_t i = 0; i < q_minus.size(); ++i)
    {
        double const lo = q_minus[i];
        double const hi = q_plus[i];
        double const mid = std::max(0.0, 1 - lo - hi);
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < rows; ++a)
        {
            for (std::size_t b = 0; b < cols; ++b)
            {
                double p = state[a * cols + b];
                if (p == 0)
                    continue;
                next[a * cols + b] += p * mid;
                next[std::min(a + 1, rows - 1) * cols + b] += p * lo;
                next[a * cols + std::min(b + 1, cols - 1)] += p * hi;
            }
        }
        std::swap(state, next);
    }

    FailureProbability result;
    result.p_fail = 0;
    result.p_pass = 0;
    for (std::size_t a = 0; a < rows; ++a)
    {
        for (std::size_t b = 0; b < cols; ++b)
        {
            double p = state[a * cols + b];
            if (a == rows - 1 || b == cols - 1)
                result.p_fail += p;
            else
                result.p_pass += p;
        }
    }
    result.p_fail = std::clamp(result.p_fail, 0.0, 1.0);
    result.p_pass = std::clamp(result.p_pass, 0.0, 1.0);
    return result;
}

FailureProbability failure_probability(ArrayModel const& model,
                                       HealthConfig const& cfg,
                                       double tail_eps)
{
    model.validate();
    cfg.validate(model.chip);

    std::map<PixelKey, Tails> cache;
    std::vector<double> q_minus, q_plus;
    for (auto const& pixel : model.pixels)
    {
        auto key = key_of(pixel);
        auto iter = cache.find(key);
        if (iter == cache.end())
        {
            auto pmf = adc_output_pmf(pixel.source, pixel.noise, model.chip,
                                      tail_eps);
            iter = cache.emplace(key, window_tails(pmf, cfg)).first;
        }
        q_minus.push_back(iter->second.below);
        q_plus.push_back(iter->second.above);
    }
    return failure_probability(q_minus, q_plus, cfg);
}

std::vector<HealthSweepPoint>
health_sweep(std::span<double const> mu_e_grid, ArrayModel const& base_model,
             HealthConfig const& cfg, QuadratureSpec const& quad,
             std::span<double const> efficiency)
{
    base_model.validate();
    cfg.validate(base_model.chip);
    quad.validate();
    require(!mu_e_grid.empty(), "health sweep needs a non-empty grid");
    for (std::size_t i = 1; i < mu_e_grid.size(); ++i)
    {
        require(mu_e_grid[i] > mu_e_grid[i - 1],
                "health sweep grid must be strictly ascending");
    }
    require(efficiency.empty() || efficiency.size() == base_model.pixels.size(),
            "efficiency must have one entry per pixel");
    for (double eff : efficiency)
        require(eff >= 0, "pixel efficiency must be non-negative");

    std::vector<HealthSweepPoint> sweep(mu_e_grid.size());
    parallel_for(mu_e_grid.size(), [&](std::size_t g) {
        ArrayModel model = base_model;
        for (std::size_t p = 0; p < model.pixels.size(); ++p)
        {
            double eff = efficiency.empty() ? 1.0 : efficiency[p];
            model.pixels[p].source.mu_e = mu_e_grid[g] * eff;
        }

        std::optional<CodeWindow> window;
        if (cfg.condition_on_acceptance)
            window = CodeWindow{cfg.t_minus, cfg.t_plus};

        std::map<PixelKey, double> entropy_cache;
        double h_sum = 0;
        for (auto const& pixel : model.pixels)
        {
            auto key = key_of(pixel);
            auto iter = entropy_cache.find(key);
            if (iter == entropy_cache.end())
            {
                double h = 0;
                try
                {
                    h = min_entropy_conditional(pixel.source, pixel.noise,
                                                model.chip, quad, window)
                            .h_min_per_bit;
                }
                catch (DomainError const&)
                {
                    // No accepted output at all: nothing to guess from
                    if (!window)
                        throw;
                }
                iter = entropy_cache.emplace(key, h).first;
            }
            h_sum += iter->second;
        }

        auto fail = failure_probability(model, cfg, quad.tail_eps);
        sweep[g].mu_e = mu_e_grid[g];
        sweep[g].p_fail = fail.p_fail;
        sweep[g].p_pass = fail.p_pass;
        sweep[g].avg_h_min_per_bit
            = h_sum / static_cast<double>(model.pixels.size());
    });
    return sweep;
}

GuaranteeVerdict verify_guarantee(std::span<HealthSweepPoint const> sweep,
                                  HealthConfig const& cfg, int symbol_bits)
{
    require(symbol_bits >= 1, "symbol_bits must be positive");
    GuaranteeVerdict verdict;
    double const floor_per_bit = cfg.h_min_floor / symbol_bits;
    for (auto const& point : sweep)
    {
        if (point.avg_h_min_per_bit <= floor_per_bit
            && point.p_pass > cfg.epsilon)
        {
            verdict.witnesses.push_back(point);
        }
    }
    verdict.holds = verdict.witnesses.empty();
    return verdict;
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
