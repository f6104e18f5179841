//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file tests/acceptance.cpp
//! Acceptance checks, one PASS/FAIL line per criterion.
//!
//! Usage: acceptance [N ...]   (all criteria when no argument is given)
//---------------------------------------------------------------------------//
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qrnglab/core_model.hpp"
#include "qrnglab/errors.hpp"
#include "qrnglab/estimators.hpp"
#include "qrnglab/health.hpp"
#include "qrnglab/noise_fit.hpp"
#include "qrnglab/poisson.hpp"
#include "qrnglab/sampler.hpp"

using namespace qrnglab;

namespace
{
struct Outcome
{
    bool pass{false};
    std::string detail;
};

std::string fmt(char const* format, ...) __attribute__((format(printf, 1, 2)));

std::string fmt(char const* format, ...)
{
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now()
                                         - start)
        .count();
}

double symbol_h_per_bit(Pmf const& codes, ChipParams const& chip)
{
    return -std::log2(symbol_pmf(codes, chip).max_prob()) / 2;
}

std::vector<double> linspace(double a, double b, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = a + (b - a) * i / (n - 1);
    return v;
}

//---------------------------------------------------------------------------//
Outcome noiseless_entropy()
{
    auto start = std::chrono::steady_clock::now();
    ChipParams chip;
    auto pmf = adc_output_pmf({625}, NoiseParams::none(), chip);
    double h = symbol_h_per_bit(pmf, chip);
    double t = seconds_since(start);
    bool pass = std::fabs(h - 0.982) <= 0.002 && t < 1;
    return {pass, fmt("h_min_per_bit=%.5f (target 0.982 +- 0.002) runtime=%.3fs",
                      h, t)};
}

Outcome operating_range()
{
    auto start = std::chrono::steady_clock::now();
    ChipParams chip;
    auto grid = linspace(500, 750, 26);
    auto curve = entropy_curve(grid, reference_pixel_noise(1), chip);
    double t = seconds_since(start);
    double lowest = 1;
    double argmin = 0;
    for (auto const& point : curve)
    {
        if (point.result.h_min_per_bit < lowest)
        {
            lowest = point.result.h_min_per_bit;
            argmin = point.mu_e;
        }
    }
    bool pass = lowest > 0.98 && t < 60;
    return {pass, fmt("min h_min_per_bit=%.5f at mu_e=%g over %zu points "
                      "(> 0.98) runtime=%.2fs",
                      lowest, argmin, curve.size(), t)};
}

Outcome unconditional_entropy()
{
    ChipParams chip;
    auto pmf = adc_output_pmf({625}, reference_pixel_noise(1), chip);
    auto h = min_entropy_unconditional(symbol_pmf(pmf, chip));
    bool pass = std::fabs(h.h_min_per_bit - 0.999) <= 0.001;
    return {pass, fmt("h_min_per_bit=%.5f (target 0.999 +- 0.001)",
                      h.h_min_per_bit)};
}

Outcome mcv_round_trip()
{
    auto start = std::chrono::steady_clock::now();
    ChipParams chip;
    std::size_t const pixels = 64;
    std::uint32_t const frames = 625'000;  // 10^7 bytes of 2-bit symbols
    auto model = ArrayModel::uniform(chip, pixels, {625},
                                     reference_pixel_noise(1));
    auto batch = sample_frames(model, frames, 20260415);
    auto bits = export_bitstream(batch, chip);
    batch = {};
    auto mcv = mcv_entropy(bits, 2);
    double t = seconds_since(start);
    bool pass = bits.size() == 10'000'000 && mcv.h_per_bit >= 0.99 && t < 60;
    return {pass, fmt("bytes=%zu mcv_h_per_bit=%.5f (>= 0.99) runtime=%.2fs",
                      bits.size(), mcv.h_per_bit, t)};
}

Outcome pileup_period()
{
    ChipParams chip;
    auto pmf = adc_output_pmf({625}, NoiseParams::none(), chip);
    // Double-height codes stand out against the mean of their neighbours
    double center = chip.gain_k * 625;
    double sd = chip.gain_k * 25;
    std::vector<int> peaks;
    for (int z = int(center - 3 * sd); z <= int(center + 3 * sd); ++z)
    {
        if (pmf(z) > 0.75 * (pmf(z - 1) + pmf(z + 1)))
            peaks.push_back(z);
    }
    // Gaps are counted in codes; a doubled code c collects electron counts
    // ceil(c/K) and ceil(c/K)+1, whose spacing is reported alongside
    int bad = 0;
    int n5 = 0, n6 = 0;
    double electron_gap = 0;
    for (std::size_t i = 1; i < peaks.size(); ++i)
    {
        int gap = peaks[i] - peaks[i - 1];
        n5 += gap == 5;
        n6 += gap == 6;
        bad += gap != 5 && gap != 6;
        electron_gap += std::ceil(peaks[i] / chip.gain_k - 1e-9)
                        - std::ceil(peaks[i - 1] / chip.gain_k - 1e-9);
    }
    double mean_gap = 0;
    if (peaks.size() > 1)
    {
        mean_gap = double(peaks.back() - peaks.front()) / (peaks.size() - 1);
        electron_gap /= peaks.size() - 1;
    }
    bool pass = peaks.size() > 10 && bad == 0;
    return {pass, fmt("peaks=%zu code gaps: 5->%d 6->%d other->%d mean=%.3f "
                      "(K/(1-K)=%.3f); electron gap mean=%.3f (1/(1-K)=%.3f)",
                      peaks.size(), n5, n6, bad, mean_gap,
                      chip.gain_k / (1 - chip.gain_k), electron_gap,
                      1 / (1 - chip.gain_k))};
}

Outcome correlation_calibration()
{
    std::uint32_t const t = 10'000;
    auto model = ArrayModel::uniform({}, 64, {625}, reference_pixel_noise(1));
    auto batch = sample_frames(model, t, 6);
    auto report = correlation_report(batch, 100);
    auto off = report.pairwise.off_diagonal();
    double mean = std::accumulate(off.begin(), off.end(), 0.0) / off.size();
    double ss = 0;
    for (double v : off)
        ss += (v - mean) * (v - mean);
    double sd = std::sqrt(ss / off.size());

    double band = 3 * report.sigma_expected;
    std::size_t total = 0, inside = 0;
    for (auto const& series : report.autocorr)
    {
        if (!series)
            continue;
        for (double v : *series)
        {
            ++total;
            inside += std::fabs(v) <= band;
        }
    }
    double fraction = total ? double(inside) / total : 0;
    bool pass = std::fabs(sd - 0.01) <= 0.2 * 0.01 && fraction >= 0.99;
    return {pass, fmt("pairs=%zu std=%.5f (0.01 +- 20%%) mean=%.2e "
                      "autocorr_within_3sigma=%.4f (>= 0.99)",
                      off.size(), sd, mean, fraction)};
}

Outcome noise_fit_round_trip()
{
    ChipParams chip;
    chip.adc_offset = 16;  // lift the dark histogram clear of code 0
    std::string detail;
    bool pass = true;
    for (int label = 1; label <= 4; ++label)
    {
        auto truth = reference_pixel_noise(label);
        auto model = ArrayModel::uniform(chip, 1, {0}, truth);
        auto batch = sample_frames(model, 1'000'000, 700 + label);
        auto fit = fit_noise_model(code_histogram(batch, 0), chip,
                                   NoiseParams{-12.0, 0.5, 12.0});
        double se = fit.std_errors[2];
        double z = (fit.params.mu_dark - truth.mu_dark) / se;
        pass = pass && std::fabs(z) < 3;
        detail += fmt("%spixel%d mu_dark=%.3f+-%.3f (true %.1f, %.2f SE)",
                      label > 1 ? "; " : "", label, fit.params.mu_dark, se,
                      truth.mu_dark, z);
    }
    return {pass, detail};
}

Outcome health_shape()
{
    HealthConfig cfg;  // 64 / 940, one outlier allowed each side
    auto model = ArrayModel::uniform({}, 64, {0}, reference_pixel_noise(1));
    auto grid = linspace(0, 1200, 121);
    auto sweep = health_sweep(grid, model, cfg);
    auto verdict = verify_guarantee(sweep, cfg);
    std::string detail = fmt("grid=%zu witnesses=%zu", sweep.size(),
                             verdict.witnesses.size());
    if (!verdict.witnesses.empty())
    {
        auto const& w = verdict.witnesses.front();
        auto const& l = verdict.witnesses.back();
        detail += fmt(" first: mu_e=%g h=%.5f p_fail=%.3e; last: mu_e=%g "
                      "h=%.5f p_fail=%.3e",
                      w.mu_e, w.avg_h_min_per_bit, w.p_fail, l.mu_e,
                      l.avg_h_min_per_bit, l.p_fail);
    }
    return {verdict.holds, detail};
}

//---------------------------------------------------------------------------//
// Property checks of the last criterion; each returns a failure count
int check_normalization(std::string& detail)
{
    int failures = 0;
    for (double k : {0.5, 0.8192, 1.0})
        for (double mu : {0.0, 625.0, 1400.0})
            for (int label = 1; label <= 4; ++label)
            {
                ChipParams chip;
                chip.gain_k = k;
                auto pmf = adc_output_pmf({mu}, reference_pixel_noise(label),
                                          chip);
                double s = std::accumulate(pmf.probs().begin(),
                                           pmf.probs().end(), 0.0);
                failures += std::fabs(s - 1) > 1e-9;
            }
    detail += fmt("normalization:%s", failures ? "fail" : "ok");
    return failures;
}

int check_monte_carlo(std::string& detail)
{
    ChipParams chip;
    auto noise = reference_pixel_noise(1);
    auto pmf = adc_output_pmf({625}, noise, chip);
    std::uint32_t const n = 1'000'000;
    auto batch = sample_frames(ArrayModel::uniform(chip, 1, {625}, noise), n,
                               99);
    auto counts = code_histogram(batch, 0);
    int failures = 0;
    double worst = 0;
    double tail_expect = 0, tail_observed = 0;
    for (int z = 0; z <= chip.z_max(); ++z)
    {
        double p = pmf(z);
        if (n * p < 1)
        {
            // Codes too rare to resolve one at a time are pooled
            tail_expect += n * p;
            tail_observed += counts[z];
            continue;
        }
        double se = std::sqrt(n * p * (1 - p));
        double dev = std::fabs(counts[z] - n * p) / se;
        worst = std::max(worst, dev);
        failures += dev > 4;
    }
    double tail_se = std::sqrt(std::max(tail_expect, 1.0));
    failures += std::fabs(tail_observed - tail_expect) > 4 * tail_se;
    detail += fmt(" mc_vs_pmf:worst=%.2fSE", worst);
    return failures;
}

int check_dp(std::string& detail)
{
    std::mt19937_64 eng(9);
    std::uniform_real_distribution<double> u(0, 0.5);
    int failures = 0;
    for (std::size_t p = 1; p <= 6; ++p)
    {
        std::vector<double> qm(p), qp(p);
        for (std::size_t i = 0; i < p; ++i)
        {
            qm[i] = u(eng);
            qp[i] = u(eng) * (1 - qm[i]);
        }
        HealthConfig cfg;
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
                int c = static_cast<int>(code % 3);
                prob *= c == 0 ? qm[i] : c == 1 ? 1 - qm[i] - qp[i] : qp[i];
                nm += c == 0;
                np += c == 2;
            }
            if (nm > cfg.n_minus_max || np > cfg.n_plus_max)
                fail += prob;
        }
        failures += std::fabs(failure_probability(qm, qp, cfg).p_fail - fail)
                    > 1e-14;
    }
    detail += fmt(" dp_vs_enumeration:%s", failures ? "fail" : "ok");
    return failures;
}

int check_gain_one(std::string& detail)
{
    ChipParams chip;
    chip.gain_k = 1.0;
    double worst = 0;
    for (double mu : {5.0, 40.0, 300.0})
    {
        auto pmf = adc_output_pmf({mu}, NoiseParams::none(), chip);
        for (int z = 0; z < 1000; ++z)
            worst = std::max(worst, std::fabs(pmf(z) - poisson_pmf(z, mu)));
    }
    detail += fmt(" gain1_poisson:%.1e", worst);
    return worst > 1e-12;
}

int check_self_convergence(std::string& detail)
{
    ChipParams chip;
    QuadratureSpec fine;
    fine.initial_panels = 2;
    double worst = 0;
    for (double mu : {100.0, 625.0, 1000.0})
    {
        for (int label = 1; label <= 4; ++label)
        {
            auto noise = reference_pixel_noise(label);
            auto a = min_entropy_conditional({mu}, noise, chip);
            auto b = min_entropy_conditional({mu}, noise, chip, fine);
            worst = std::max(worst, std::fabs(a.p_guess - b.p_guess));
        }
    }
    detail += fmt(" quadrature:%.1e", worst);
    return worst >= 1e-5;
}

int check_reproducibility(std::string& detail)
{
    auto model = ArrayModel::uniform({}, 64, {625}, reference_pixel_noise(1));
    auto a = sample_frames(model, 2000, 31);
    auto b = sample_frames(model, 2000, 31);
    bool same = a.codes == b.codes && batch_hash(a) == batch_hash(b);
    detail += fmt(" reproducible:%s", same ? "ok" : "fail");
    return !same;
}

int check_variance_mean(std::string& detail)
{
    ChipParams chip;
    std::vector<FrameBatch> batches;
    for (double mu = 100; mu <= 1000; mu += 100)
    {
        auto model = ArrayModel::uniform(chip, 1, {mu}, reference_pixel_noise(1));
        batches.push_back(sample_frames(model, 20'000, 500 + mu));
    }
    auto fit = variance_mean_fit(batches, 0);
    detail += fmt(" var_mean:slope=%.4f r2=%.5f", fit.slope, fit.r_squared);
    return std::fabs(fit.slope - chip.gain_k) > 0.03 || fit.r_squared <= 0.99;
}

Outcome properties()
{
    std::string detail;
    int failures = 0;
    for (auto* check : {check_normalization, check_monte_carlo, check_dp,
                        check_gain_one, check_self_convergence,
                        check_reproducibility, check_variance_mean})
    {
        failures += check(detail);
    }
    return {failures == 0, detail};
}
}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::function<Outcome()>> const criteria{
        noiseless_entropy,      operating_range,     unconditional_entropy,
        mcv_round_trip,         pileup_period,       correlation_calibration,
        noise_fit_round_trip,   health_shape,        properties,
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
    {
        int n = std::atoi(argv[i]);
        if (n < 1 || n > static_cast<int>(criteria.size()))
        {
            std::fprintf(stderr, "unknown criterion '%s'\n", argv[i]);
            return 2;
        }
        selected.push_back(n);
    }
    if (selected.empty())
    {
        for (std::size_t n = 1; n <= criteria.size(); ++n)
            selected.push_back(static_cast<int>(n));
    }

    bool all = true;
    for (int n : selected)
    {
        Outcome result;
        try
        {
            result = criteria[n - 1]();
        }
        catch (std::exception const& e)
        {
            result = {false, std::string("error: ") + e.what()};
        }
        std::printf("criterion %d: %s %s\n", n, result.pass ? "PASS" : "FAIL",
                    result.detail.c_str());
        std::fflush(stdout);
        all = all && result.pass;
    }
    return all ? 0 : 1;
}
