//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_sampler.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/sampler.hpp"

#include <cmath>
#include <cstdlib>
#include <boost/math/distributions/chi_squared.hpp>

#include "doctest.h"
#include "qrnglab/core_model.hpp"
#include "qrnglab/errors.hpp"
#include "qrnglab/estimators.hpp"

using namespace qrnglab;

TEST_SUITE("sampler")
{
    TEST_CASE("deterministic chain")
    {
        auto model = ArrayModel::uniform({}, 3, {0}, NoiseParams{100.4, 0, 0});
        auto batch = sample_frames(model, 50, 1);
        for (auto code : batch.codes)
            CHECK(code == 100);
        CHECK(batch.t_frames == 50);
        CHECK(batch.num_pixels == 3);
        CHECK(batch.model_digest == model_digest(model));
    }

    TEST_CASE("invalid requests")
    {
        auto model = ArrayModel::uniform({}, 2, {625}, reference_pixel_noise(1));
        CHECK_THROWS_AS(sample_frames(model, 0, 1), DomainError);
        ArrayModel empty;
        CHECK_THROWS_AS(empty.validate(), DomainError);
    }

    TEST_CASE("histogram matches the exact distribution")
    {
        ChipParams chip;
        auto noise = reference_pixel_noise(1);
        auto model = ArrayModel::uniform(chip, 1, {625}, noise);
        std::uint32_t const t = 100'000;
        auto batch = sample_frames(model, t, 12345);
        auto counts = code_histogram(batch, 0);
        auto pmf = adc_output_pmf({625}, noise, chip);

        double chi2 = 0;
        int bins = 0;
        double expect = 0, observed = 0;
        double cdf_model = 0, cdf_sample = 0, ks = 0;
        for (int z = 0; z <= chip.z_max(); ++z)
        {
            expect += t * pmf(z);
            observed += counts[z];
            if (expect >= 5)
            {
                chi2 += (observed - expect) * (observed - expect) / expect;
                ++bins;
                expect = observed = 0;
            }
            cdf_model += pmf(z);
            cdf_sample += counts[z] / t;
            ks = std::max(ks, std::fabs(cdf_model - cdf_sample));
        }
        boost::math::chi_squared dist(bins - 1);
        double p = boost::math::cdf(boost::math::complement(dist, chi2));
        CAPTURE(chi2);
        CHECK(p > 0.001);
        CHECK(ks < 5 / std::sqrt(double(t)));
    }

    TEST_CASE("reproducibility")
    {
        auto model = ArrayModel::uniform({}, 8, {625}, reference_pixel_noise(1));
        auto a = sample_frames(model, 1000, 42);
        auto b = sample_frames(model, 1000, 42);
        auto c = sample_frames(model, 1000, 43);
        CHECK(batch_hash(a) == batch_hash(b));
        CHECK(a.codes == b.codes);
        CHECK(batch_hash(a) != batch_hash(c));

        // Extending a run leaves earlier frames untouched
        auto longer = sample_frames(model, 1500, 42);
        CHECK(std::equal(a.codes.begin(), a.codes.end(), longer.codes.begin()));
    }

    TEST_CASE("independent of the thread count")
    {
        auto model = ArrayModel::uniform({}, 16, {625}, reference_pixel_noise(1));
        ::setenv("QRNG_LAB_THREADS", "1", 1);
        auto serial = sample_frames(model, 500, 9);
        ::setenv("QRNG_LAB_THREADS", "4", 1);
        auto threaded = sample_frames(model, 500, 9);
        ::unsetenv("QRNG_LAB_THREADS");
        CHECK(batch_hash(serial) == batch_hash(threaded));
    }

    TEST_CASE("model digest tracks parameters")
    {
        auto a = ArrayModel::uniform({}, 4, {625}, reference_pixel_noise(1));
        auto b = a;
        CHECK(model_digest(a) == model_digest(b));
        b.pixels[2].source.mu_e = 626;
        CHECK(model_digest(a) != model_digest(b));
        b = a;
        b.chip.adc_offset = 8;
        CHECK(model_digest(a) != model_digest(b));
    }

    TEST_CASE("generated pixels are uncorrelated")
    {
        auto model = ArrayModel::uniform({}, 16, {625}, reference_pixel_noise(1));
        std::uint32_t const t = 10'000;
        auto batch = sample_frames(model, t, 77);
        auto m = pearson_matrix(batch);
        for (double rho : m.off_diagonal())
            CHECK(std::fabs(rho) < 4 / std::sqrt(double(t)));
    }

    TEST_CASE("bitstream packing")
    {
        ChipParams chip;
        FrameBatch batch;
        batch.t_frames = 1;
        batch.num_pixels = 4;
        batch.codes = {12, 12, 12, 12};
        CHECK(export_bitstream(batch, chip) == std::vector<std::uint8_t>{0xFF});
        batch.codes = {0, 4, 8, 12};
        CHECK(export_bitstream(batch, chip) == std::vector<std::uint8_t>{0xE4});

        // Frame-major order and zero padding of the final byte
        batch.t_frames = 3;
        batch.num_pixels = 2;
        batch.codes = {4, 8, 12, 0, 4, 4};
        CHECK(export_bitstream(batch, chip)
              == std::vector<std::uint8_t>{0x39, 0x05});
    }
}
