//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/test_health.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/health.hpp"

#include <cmath>
#include <random>

#include "doctest.h"
#include "qrnglab/errors.hpp"

using namespace qrnglab;

namespace
{
// Sum over all 3^P below/inside/above assignments
double enumerate_fail(std::vector<double> const& qm,
                      std::vector<double> const& qp, HealthConfig const& cfg)
{
    std::size_t p = qm.size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < p; ++i)
        total *= 3;
    double fail = 0;
    for (std::size_t s = 0; s < total; ++s)
    {
        std::size_t code = s;
        double prob = 1;
        int nm = 0, np = 0;
        for (std::size_t i = 0; i < p; ++i, code /= 3)
        {
            switch (code % 3)
            {
                case 0: prob *= qm[i]; ++nm; break;
                case 1: prob *= 1 - qm[i] - qp[i]; break;
                default: prob *= qp[i]; ++np; break;
            }
        }
        if (nm > cfg.n_minus_max || np > cfg.n_plus_max)
            fail += prob;
    }
    return fail;
}

struct MonteCarlo
{
    double p_fail;
    double se;
};

MonteCarlo simulate_fail(ArrayModel const& model, HealthConfig const& cfg,
                         std::uint32_t frames, std::uint64_t seed)
{
    auto batch = sample_frames(model, frames, seed);
    std::size_t failed = 0;
    for (std::uint32_t t = 0; t < frames; ++t)
        failed += judge_frame(batch.frame(t), cfg).failed;
    double p = double(failed) / frames;
    return {p, std::sqrt(std::max(p * (1 - p), 1.0 / frames) / frames)};
}

ArrayModel reference_array(double mu_e, std::size_t pixels = 64)
{
    return ArrayModel::uniform({}, pixels, {mu_e}, reference_pixel_noise(1));
}
}  // namespace

TEST_SUITE("health")
{
    TEST_CASE("frame verdicts")
    {
        HealthConfig cfg;
        std::vector<std::uint16_t> ok{100, 500, 63, 941};
        auto v = judge_frame(ok, cfg);
        CHECK(v.n_minus == 1);
        CHECK(v.n_plus == 1);
        CHECK_FALSE(v.failed);

        std::vector<std::uint16_t> low{10, 20, 500, 500};
        CHECK(judge_frame(low, cfg).failed);
        std::vector<std::uint16_t> high{1000, 1023, 500, 500};
        CHECK(judge_frame(high, cfg).failed);
        std::vector<std::uint16_t> edges{64, 940, 64, 940};
        auto e = judge_frame(edges, cfg);
        CHECK(e.n_minus == 0);
        CHECK(e.n_plus == 0);
    }

    TEST_CASE("configuration checks")
    {
        ChipParams chip;
        HealthConfig cfg;
        CHECK_NOTHROW(cfg.validate(chip));
        cfg.t_minus = 940;
        CHECK_THROWS_AS(cfg.validate(chip), DomainError);
        cfg = {};
        cfg.t_plus = 1024;
        CHECK_THROWS_AS(cfg.validate(chip), DomainError);
        cfg = {};
        cfg.n_plus_max = -1;
        CHECK_THROWS_AS(cfg.validate(chip), DomainError);
        cfg = {};
        cfg.epsilon = 2;
        CHECK_THROWS_AS(cfg.validate(chip), DomainError);
    }

    TEST_CASE("single pixel with zero tolerance")
    {
        HealthConfig cfg;
        cfg.n_minus_max = 0;
        cfg.n_plus_max = 0;
        std::vector<double> qm{0.125}, qp{0.25};
        auto f = failure_probability(qm, qp, cfg);
        CHECK(f.p_fail == doctest::Approx(0.375));
        CHECK(f.p_pass == doctest::Approx(0.625));
    }

    TEST_CASE("dynamic program matches exhaustive enumeration")
    {
        std::mt19937_64 eng(17);
        std::uniform_real_distribution<double> u(0, 0.5);
        for (std::size_t p = 1; p <= 6; ++p)
        {
            for (int nmax : {0, 1, 2})
            {
                std::vector<double> qm(p), qp(p);
                for (std::size_t i = 0; i < p; ++i)
                {
                    qm[i] = u(eng);
                    qp[i] = u(eng) * (1 - qm[i]);
                }
                HealthConfig cfg;
                cfg.n_minus_max = nmax;
                cfg.n_plus_max = (nmax + 1) % 3;
                auto f = failure_probability(qm, qp, cfg);
                double expect = enumerate_fail(qm, qp, cfg);
                CAPTURE(p);
                CAPTURE(nmax);
                CHECK(std::fabs(f.p_fail - expect) < 1e-14);
                CHECK(std::fabs(f.p_pass - (1 - expect)) < 1e-14);
            }
        }
    }

    TEST_CASE("tests that can never fire")
    {
        HealthConfig cfg;
        cfg.t_minus = 0;
        cfg.t_plus = 1023;
        cfg.n_minus_max = 64;
        cfg.n_plus_max = 64;
        auto f = failure_probability(reference_array(625), cfg);
        CHECK(f.p_fail == 0.0);
        CHECK(f.p_pass == 1.0);
        cfg.n_minus_max = 0;
        cfg.n_plus_max = 0;
        for (double mu : {0.0, 1200.0})
            CHECK(failure_probability(reference_array(mu), cfg).p_fail == 0.0);
    }

    TEST_CASE("single pixel against simulation")
    {
        HealthConfig cfg;
        cfg.n_minus_max = 0;
        cfg.n_plus_max = 0;
        auto model = reference_array(77, 1);
        auto exact = failure_probability(model, cfg);
        auto mc = simulate_fail(model, cfg, 1'000'000, 5);
        CHECK(exact.p_fail > 0.2);
        CHECK(exact.p_fail < 0.8);
        CHECK(std::fabs(exact.p_fail - mc.p_fail) < 4 * mc.se);
    }

    TEST_CASE("full array against simulation")
    {
        HealthConfig cfg;
        std::uint64_t seed = 100;
        for (double mu : {90.0, 100.0, 110.0, 625.0, 1080.0, 1100.0})
        {
            auto model = reference_array(mu);
            auto exact = failure_probability(model, cfg);
            auto mc = simulate_fail(model, cfg, 20'000, seed++);
            CAPTURE(mu);
            CAPTURE(exact.p_fail);
            CAPTURE(mc.p_fail);
            CHECK(std::fabs(exact.p_fail - mc.p_fail) < 4 * mc.se);
        }
    }

    TEST_CASE("failure probability across the illumination range")
    {
        HealthConfig cfg;
        auto dark = failure_probability(reference_array(0), cfg);
        CHECK(dark.p_fail == doctest::Approx(1.0));
        CHECK(dark.p_pass < 1e-100);

        double last = 2;
        for (double mu = 0; mu <= 400; mu += 20)
        {
            double p = failure_probability(reference_array(mu), cfg).p_fail;
            CHECK(p <= last + 1e-15);
            last = p;
        }
        last = -1;
        for (double mu = 700; mu <= 1200; mu += 20)
        {
            double p = failure_probability(reference_array(mu), cfg).p_fail;
            CHECK(p >= last - 1e-15);
            last = p;
        }
        CHECK(last > 0.999);
    }

    TEST_CASE("sweep points agree with standalone evaluation")
    {
        HealthConfig cfg;
        auto base = reference_array(625);
        std::vector<double> grid{150};
        auto sweep = health_sweep(grid, base, cfg);
        REQUIRE(sweep.size() == 1);
        auto direct = failure_probability(reference_array(150), cfg);
        CHECK(sweep[0].mu_e == 150);
        CHECK(sweep[0].p_fail == doctest::Approx(direct.p_fail).epsilon(1e-12));
        auto h = min_entropy_conditional({150}, reference_pixel_noise(1), {});
        CHECK(sweep[0].avg_h_min_per_bit
              == doctest::Approx(h.h_min_per_bit).epsilon(1e-12));

        std::vector<double> unsorted{5, 1};
        CHECK_THROWS_AS(health_sweep(unsorted, base, cfg), DomainError);
        std::vector<double> eff(3, 1.0);
        CHECK_THROWS_AS(health_sweep(grid, base, cfg, {}, eff), DomainError);
    }

    TEST_CASE("per-pixel efficiency scales the illumination")
    {
        HealthConfig cfg;
        auto base = reference_array(0, 4);
        std::vector<double> eff{1.0, 0.5, 1.0, 0.5};
        std::vector<double> grid{200};
        auto sweep = health_sweep(grid, base, cfg, {}, eff);
        auto model = base;
        for (std::size_t i = 0; i < 4; ++i)
            model.pixels[i].source.mu_e = 200 * eff[i];
        auto direct = failure_probability(model, cfg);
        CHECK(sweep[0].p_fail == doctest::Approx(direct.p_fail).epsilon(1e-12));
    }

    TEST_CASE("guarantee verification")
    {
        HealthConfig cfg;
        CHECK(verify_guarantee({}, cfg).holds);

        std::vector<HealthSweepPoint> sweep{
            {100, 0.5, 0.5, 0.5},
            {200, 1 - 1e-7, 1e-7, 0.5},
            {300, 0.0, 1.0, 0.99},
        };
        auto v = verify_guarantee(sweep, cfg);
        CHECK_FALSE(v.holds);
        REQUIRE(v.witnesses.size() == 1);
        CHECK(v.witnesses[0].mu_e == 100);

        // With the tests disabled every low-entropy point is a violation
        HealthConfig off;
        off.t_minus = 0;
        off.t_plus = 1023;
        std::vector<double> grid{0, 625, 1200};
        auto swept = health_sweep(grid, reference_array(0, 8), off);
        auto verdict = verify_guarantee(swept, off);
        CHECK_FALSE(verdict.holds);
        CHECK(verdict.witnesses.size() == 2);
    }
}
