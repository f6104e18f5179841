//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_core_model.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qrnglab/errors.hpp"
#include "qrnglab/poisson.hpp"

using namespace qrnglab;

namespace
{
double sum(Pmf const& p)
{
    double s = 0;
    for (double v : p.probs())
        s += v;
    return s;
}

double per_bit(Pmf const& symbols)
{
    return -std::log2(symbols.max_prob()) / 2;
}

ChipParams chip_with_gain(double k, int bits = 10)
{
    ChipParams chip;
    chip.gain_k = k;
    chip.adc_bits = bits;
    return chip;
}
}  // namespace

TEST_SUITE("core_model")
{
    TEST_CASE("symbol extraction")
    {
        ChipParams chip;
        CHECK(extract_symbol(0, chip) == 0);
        CHECK(extract_symbol(12, chip) == 3);
        CHECK(extract_symbol(1023, chip) == 3);
        CHECK(extract_symbol(4, chip) == 1);
        CHECK(extract_symbol(8, chip) == 2);
        CHECK_THROWS_AS(extract_symbol(-1, chip), DomainError);
        CHECK_THROWS_AS(extract_symbol(1024, chip), DomainError);

        // First retained index is the low bit of the symbol
        chip.retained_bits = {3, 2};
        CHECK(extract_symbol(4, chip) == 2);
        CHECK(extract_symbol(8, chip) == 1);
    }

    TEST_CASE("quantization clamps")
    {
        ChipParams chip;
        CHECK(quantize(-5.5, chip) == 0);
        CHECK(quantize(10.3, chip) == 10);
        CHECK(quantize(1e6, chip) == 1023);
        // K * n that is an integer up to rounding lands on that integer
        CHECK(quantize(0.8192 * 625, chip) == 512);
    }

    TEST_CASE("symbol pushforward")
    {
        ChipParams chip;
        auto uniform = symbol_pmf(Pmf::uniform(0, 1024), chip);
        for (int s = 0; s < 4; ++s)
            CHECK(uniform(s) == doctest::Approx(0.25).epsilon(1e-15));
        auto point = symbol_pmf(Pmf::point_mass(625), chip);
        CHECK(point(0) == 1.0);
    }

    TEST_CASE("normalization over many parameter sets")
    {
        for (double k : {0.5, 0.8192, 1.0})
        {
            for (double mu : {0.0, 3.0, 625.0, 1400.0})
            {
                for (double offset : {0.0, 8.0, -30.0})
                {
                    for (auto noise : {NoiseParams::none(),
                                       reference_pixel_noise(1),
                                       NoiseParams{2.0, 1.5, 0.0}})
                    {
                        auto chip = chip_with_gain(k);
                        chip.adc_offset = offset;
                        auto pmf = adc_output_pmf({mu}, noise, chip);
                        CAPTURE(k);
                        CAPTURE(mu);
                        CAPTURE(offset);
                        CHECK(pmf.first() == 0);
                        CHECK(pmf.last() == 1023);
                        CHECK(std::fabs(sum(pmf) - 1) < 1e-9);
                        CHECK(std::fabs(sum(symbol_pmf(pmf, chip)) - 1) < 1e-9);
                    }
                }
            }
        }
        CHECK_THROWS_AS(adc_output_pmf({5}, NoiseParams::none(), ChipParams{}, 1.0),
                        DomainError);
    }

    TEST_CASE("unit gain reproduces the Poisson distribution")
    {
        auto chip = chip_with_gain(1.0);
        auto pmf = adc_output_pmf({5}, NoiseParams::none(), chip);
        for (int z = 0; z < 60; ++z)
            CHECK(std::fabs(pmf(z) - poisson_pmf(z, 5)) < 1e-12);

        // Clamping at the top code collects the upper tail
        auto small = chip_with_gain(1.0, 4);
        auto clamped = adc_output_pmf({12}, NoiseParams::none(), small);
        double tail = 1;
        for (int z = 0; z < 15; ++z)
        {
            CHECK(std::fabs(clamped(z) - poisson_pmf(z, 12)) < 1e-12);
            tail -= poisson_pmf(z, 12);
        }
        CHECK(std::fabs(clamped(15) - tail) < 1e-12);
    }

    TEST_CASE("noiseless pile-up entropy")
    {
        ChipParams chip;
        auto pmf = adc_output_pmf({625}, NoiseParams::none(), chip);
        double h = per_bit(symbol_pmf(pmf, chip));
        CHECK(std::fabs(h - 0.982) <= 0.002);
    }

    TEST_CASE("pile-up periodicity")
    {
        ChipParams chip;
        auto pmf = adc_output_pmf({625}, NoiseParams::none(), chip);
        double center = chip.gain_k * 625;
        double sd = chip.gain_k * 25;
        std::vector<int> peaks;
        for (int z = int(center - 3 * sd); z <= int(center + 3 * sd); ++z)
        {
            if (pmf(z) > 1.5 * 0.5 * (pmf(z - 1) + pmf(z + 1)))
                peaks.push_back(z);
        }
        // A doubled code collects electron counts n and n+1. Successive
        // doubled n are 5 or 6 apart, which is K/(1-K) codes on average.
        REQUIRE(peaks.size() > 10);
        for (std::size_t i = 1; i < peaks.size(); ++i)
        {
            int gap = peaks[i] - peaks[i - 1];
            CAPTURE(peaks[i]);
            CHECK((gap == 4 || gap == 5));
            int n_gap = static_cast<int>(std::ceil(peaks[i] / chip.gain_k - 1e-9))
                        - static_cast<int>(std::ceil(peaks[i - 1] / chip.gain_k - 1e-9));
            CHECK((n_gap == 5 || n_gap == 6));
        }
        double mean_gap = double(peaks.back() - peaks.front())
                          / (peaks.size() - 1);
        CHECK(mean_gap
              == doctest::Approx(chip.gain_k / (1 - chip.gain_k)).epsilon(0.03));
    }

    TEST_CASE("Monte Carlo oracle at four-bit depth")
    {
        struct Case
        {
            double k, mu_e, mu_dark, mu_r, sigma_r;
        };
        std::mt19937_64 engine(20260101);
        for (auto c : {Case{0.5, 10, 3, 1.0, 0.4}, Case{0.8192, 6, 2, 0.5, 0.3},
                       Case{1.0, 4, 1.5, 0.2, 0.6}})
        {
            auto chip = chip_with_gain(c.k, 4);
            NoiseParams noise{c.mu_r, c.sigma_r, c.mu_dark};
            auto pmf = adc_output_pmf({c.mu_e}, noise, chip);

            std::poisson_distribution<int> photons(c.mu_e);
            std::poisson_distribution<int> dark(c.mu_dark);
            std::normal_distribution<double> readout(c.mu_r, c.sigma_r);
            std::size_t const n = 10'000'000;
            std::vector<std::size_t> counts(16, 0);
            for (std::size_t i = 0; i < n; ++i)
            {
                double x = c.k * (photons(engine) + dark(engine))
                           + readout(engine);
                int z = std::clamp(static_cast<int>(std::floor(x)), 0, 15);
                ++counts[z];
            }
            for (int z = 0; z < 16; ++z)
            {
                double p = pmf(z);
                double se = std::sqrt(n * p * (1 - p));
                CAPTURE(c.k);
                CAPTURE(z);
                CHECK(std::fabs(counts[z] - n * p) <= 4 * se);
            }
        }
    }

    TEST_CASE("conditional symbol distribution")
    {
        ChipParams chip;
        auto dark = conditional_symbol_pmf(10.3, {0}, chip);
        CHECK(dark(2) == 1.0);

        // Brute-force enumeration over photo-electron counts
        for (double e : {0.0, -13.6, 3.37, 14.09})
        {
            auto pmf = conditional_symbol_pmf(e, {625}, chip);
            std::array<double, 4> brute{};
            for (int n = 0; n < 2000; ++n)
            {
                double x = chip.gain_k * n + e;
                int z = std::clamp(static_cast<int>(std::floor(x + 1e-9)), 0,
                                   1023);
                brute[(z >> 2) & 3] += poisson_pmf(n, 625);
            }
            CAPTURE(e);
            for (int s = 0; s < 4; ++s)
                CHECK(std::fabs(pmf(s) - brute[s]) < 1e-12);
            CHECK(std::fabs(sum(pmf) - 1) < 1e-9);
        }
    }

    TEST_CASE("conditional entropy without noise")
    {
        ChipParams chip;
        auto r = min_entropy_conditional({625}, NoiseParams::none(), chip);
        CHECK(std::fabs(r.h_min_per_bit - 0.982) <= 0.002);
        auto plain = min_entropy_unconditional(
            symbol_pmf(adc_output_pmf({625}, NoiseParams::none(), chip), chip));
        CHECK(r.h_min_per_bit == doctest::Approx(plain.h_min_per_bit).epsilon(1e-9));
    }

    TEST_CASE("conditional entropy in the operating range")
    {
        ChipParams chip;
        auto noise = reference_pixel_noise(1);
        for (double mu : {500.0, 625.0, 750.0})
        {
            auto r = min_entropy_conditional({mu}, noise, chip);
            CAPTURE(mu);
            CHECK(r.h_min_per_bit > 0.98);
            CHECK(r.h_min_total == doctest::Approx(2 * r.h_min_per_bit));
            CHECK(r.truncation_bound > 0);
            CHECK(r.truncation_bound < 1e-9);
        }
    }

    TEST_CASE("deterministic output has no entropy")
    {
        ChipParams chip;
        auto r = min_entropy_conditional({0}, NoiseParams{0, 0.01, 0}, chip);
        CHECK(r.p_guess == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(r.h_min_per_bit < 1e-9);
    }

    TEST_CASE("conditioning never increases min-entropy")
    {
        for (double k : {0.5, 0.8192})
        {
            for (int label : {1, 2, 4})
            {
                for (double mu : {50.0, 300.0, 625.0, 1100.0})
                {
                    auto chip = chip_with_gain(k);
                    auto noise = reference_pixel_noise(label);
                    auto cond = min_entropy_conditional({mu}, noise, chip);
                    auto plain = min_entropy_unconditional(
                        symbol_pmf(adc_output_pmf({mu}, noise, chip), chip));
                    CAPTURE(k);
                    CAPTURE(label);
                    CAPTURE(mu);
                    CHECK(cond.h_min_per_bit <= plain.h_min_per_bit + 1e-12);
                }
            }
        }
    }

    TEST_CASE("quadrature self-convergence")
    {
        ChipParams chip;
        auto noise = reference_pixel_noise(1);
        QuadratureSpec fine;
        fine.initial_panels = 2;
        for (double mu : {100.0, 625.0, 1000.0})
        {
            auto base = min_entropy_conditional({mu}, noise, chip);
            auto halved = min_entropy_conditional({mu}, noise, chip, fine);
            CAPTURE(mu);
            CHECK(std::fabs(base.p_guess - halved.p_guess) < 1e-5);
        }
    }

    TEST_CASE("non-convergent quadrature is reported")
    {
        ChipParams chip;
        QuadratureSpec strict;
        strict.gl_order = 1;
        strict.max_refinements = 1;
        strict.tolerance = 1e-300;
        strict.divergence_limit = 1e-300;
        try
        {
            min_entropy_conditional({625}, NoiseParams{0, 3.0, 5.0}, chip,
                                    strict);
            FAIL("expected a convergence error");
        }
        catch (ConvergenceError const& e)
        {
            CHECK(e.mu_e() == 625);
            CHECK(e.delta() > 0);
        }
    }

    TEST_CASE("unconditional min-entropy")
    {
        CHECK(min_entropy_unconditional(Pmf::uniform(0, 4)).h_min_per_bit == 1.0);
        CHECK(min_entropy_unconditional(Pmf::point_mass(2)).h_min_per_bit == 0.0);

        ChipParams chip;
        auto pmf = adc_output_pmf({625}, reference_pixel_noise(1), chip);
        auto r = min_entropy_unconditional(symbol_pmf(pmf, chip));
        CHECK(std::fabs(r.h_min_per_bit - 0.999) <= 0.001);
    }

    TEST_CASE("acceptance window renormalizes")
    {
        ChipParams chip;
        auto noise = reference_pixel_noise(1);
        auto full = min_entropy_conditional({625}, noise, chip);
        auto wide = min_entropy_conditional({625}, noise, chip, {},
                                            CodeWindow{0, 1023});
        CHECK(wide.p_guess == doctest::Approx(full.p_guess).epsilon(1e-12));
        CHECK_THROWS_AS(min_entropy_conditional({625}, noise, chip, {},
                                                CodeWindow{0, 2}),
                        DomainError);
    }

    TEST_CASE("entropy curve")
    {
        ChipParams chip;
        auto noise = reference_pixel_noise(1);
        std::vector<double> grid{500, 560, 625, 690, 750};
        auto curve = entropy_curve(grid, noise, chip);
        REQUIRE(curve.size() == grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            CHECK(curve[i].mu_e == grid[i]);
            CHECK(curve[i].result.h_min_per_bit > 0.98);
        }
        // A point computed alone is identical to the same point in a grid
        auto alone = min_entropy_conditional({625}, noise, chip);
        CHECK(alone.p_guess == curve[2].result.p_guess);

        std::vector<double> zero{0};
        CHECK(entropy_curve(zero, noise, chip)[0].result.h_min_per_bit < 1e-6);

        std::vector<double> empty;
        CHECK_THROWS_AS(entropy_curve(empty, noise, chip), DomainError);
        std::vector<double> descending{600, 500};
        CHECK_THROWS_AS(entropy_curve(descending, noise, chip), DomainError);
    }
}
