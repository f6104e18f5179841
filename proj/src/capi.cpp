//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file capi.cpp
//! C bindings over the qrnglab core.
//---------------------------------------------------------------------------//
#include "qrnglab/qrnglab.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>

#include "qrnglab/core_model.hpp"
#include "qrnglab/errors.hpp"
#include "qrnglab/estimators.hpp"
#include "qrnglab/frame_io.hpp"
#include "qrnglab/health.hpp"
#include "qrnglab/noise_fit.hpp"
#include "qrnglab/sampler.hpp"

struct qrng_model
{
    qrnglab::ArrayModel model;
};

struct qrng_batch
{
    qrnglab::FrameBatch batch;
};

namespace
{
using namespace qrnglab;

thread_local std::string last_error;

struct InvalidArgument
{
    char const* what;
};

void check(bool condition, char const* what)
{
    if (!condition)
        throw InvalidArgument{what};
}

template<class F>
qrng_status guarded(F&& f)
{
    try
    {
        f();
        last_error.clear();
        return QRNG_OK;
    }
    catch (InvalidArgument const& e)
    {
        last_error = e.what;
        return QRNG_ERR_INVALID_ARGUMENT;
    }
    catch (UnfittableError const& e)
    {
        last_error = e.what();
        return QRNG_ERR_UNFITTABLE;
    }
    catch (FitError const& e)
    {
        last_error = e.what();
        return QRNG_ERR_FIT;
    }
    catch (ConvergenceError const& e)
    {
        last_error = e.what();
        return QRNG_ERR_CONVERGENCE;
    }
    catch (DomainError const& e)
    {
        last_error = e.what();
        return QRNG_ERR_DOMAIN;
    }
    catch (IoError const& e)
    {
        last_error = e.what();
        return QRNG_ERR_IO;
    }
    catch (FormatError const& e)
    {
        last_error = e.what();
        return QRNG_ERR_FORMAT;
    }
    catch (std::bad_alloc const&)
    {
        last_error = "out of memory";
        return QRNG_ERR_INTERNAL;
    }
    catch (std::exception const& e)
    {
        last_error = e.what();
        return QRNG_ERR_INTERNAL;
    }
    catch (...)
    {
        last_error = "unknown error";
        return QRNG_ERR_INTERNAL;
    }
}

ChipParams to_cpp(qrng_chip_params const* c)
{
    check(c, "chip parameters are null");
    ChipParams chip;
    chip.gain_k = c->gain_k;
    chip.adc_bits = c->adc_bits;
    chip.adc_offset = c->adc_offset;
    chip.retained_bits = {c->retained_bits[0], c->retained_bits[1]};
    chip.validate();
    return chip;
}

NoiseParams to_cpp(qrng_noise_params const* n)
{
    check(n, "noise parameters are null");
    NoiseParams noise{n->mu_r, n->sigma_r, n->mu_dark};
    noise.validate();
    return noise;
}

QuadratureSpec to_cpp(qrng_quadrature const* q)
{
    if (!q)
        return {};
    QuadratureSpec quad;
    quad.tail_eps = q->tail_eps;
    quad.range_sigmas = q->range_sigmas;
    quad.gl_order = q->gl_order;
    quad.initial_panels = q->initial_panels;
    quad.max_refinements = q->max_refinements;
    quad.tolerance = q->tolerance;
    quad.divergence_limit = q->divergence_limit;
    return quad;
}

HealthConfig to_cpp(qrng_health_config const* h)
{
    check(h, "health config is null");
    HealthConfig cfg;
    cfg.t_minus = h->t_minus;
    cfg.t_plus = h->t_plus;
    cfg.n_minus_max = h->n_minus_max;
    cfg.n_plus_max = h->n_plus_max;
    cfg.h_min_floor = h->h_min_floor;
    cfg.epsilon = h->epsilon;
    cfg.condition_on_acceptance = h->condition_on_acceptance != 0;
    return cfg;
}

void to_c(EntropyResult const& r, qrng_entropy_result* out)
{
    out->p_guess = r.p_guess;
    out->h_min_total = r.h_min_total;
    out->h_min_per_bit = r.h_min_per_bit;
    out->truncation_bound = r.truncation_bound;
    out->quadrature_delta = r.quadrature_delta;
    out->refinements = r.refinements;
}

qrng_sweep_point to_c(HealthSweepPoint const& p)
{
    return {p.mu_e, p.p_fail, p.p_pass, p.avg_h_min_per_bit};
}

HealthSweepPoint to_cpp(qrng_sweep_point const& p)
{
    return {p.mu_e, p.p_fail, p.p_pass, p.avg_h_min_per_bit};
}

constexpr double undefined = std::numeric_limits<double>::quiet_NaN();

}  // namespace

extern "C" {

//---------------------------------------------------------------------------//
char const* qrng_version(void)
{
    return "0.1.0";
}

char const* qrng_last_error(void)
{
    return last_error.c_str();
}

char const* qrng_status_name(qrng_status status)
{
    switch (status)
    {
        case QRNG_OK:
            return "ok";
        case QRNG_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case QRNG_ERR_DOMAIN:
            return "domain error";
        case QRNG_ERR_CONVERGENCE:
            return "convergence error";
        case QRNG_ERR_FIT:
            return "fit error";
        case QRNG_ERR_UNFITTABLE:
            return "unfittable";
        case QRNG_ERR_IO:
            return "i/o error";
        case QRNG_ERR_FORMAT:
            return "format error";
        case QRNG_ERR_INTERNAL:
            return "internal error";
    }
    return "unknown status";
}

void qrng_chip_defaults(qrng_chip_params* chip)
{
    if (!chip)
        return;
    ChipParams d;
    chip->gain_k = d.gain_k;
    chip->adc_bits = d.adc_bits;
    chip->adc_offset = d.adc_offset;
    chip->retained_bits[0] = d.retained_bits[0];
    chip->retained_bits[1] = d.retained_bits[1];
}

void qrng_quadrature_defaults(qrng_quadrature* quad)
{
    if (!quad)
        return;
    QuadratureSpec d;
    *quad = {d.tail_eps,        d.range_sigmas,    d.gl_order,
             d.initial_panels,  d.max_refinements, d.tolerance,
             d.divergence_limit};
}

void qrng_health_defaults(qrng_health_config* cfg)
{
    if (!cfg)
        return;
    HealthConfig d;
    *cfg = {d.t_minus,     d.t_plus,  d.n_minus_max,
            d.n_plus_max,  d.h_min_floor, d.epsilon,
            d.condition_on_acceptance ? 1 : 0};
}

void qrng_fit_defaults(qrng_fit_options* options)
{
    if (!options)
        return;
    NoiseFitOptions d;
    *options = {d.fit_gain ? 1 : 0, d.max_iterations, d.tolerance,
                d.clip_limit, d.min_total_count};
}

qrng_status qrng_noise_reference(int label, qrng_noise_params* out)
{
    return guarded([&] {
        check(out, "output is null");
        auto n = reference_pixel_noise(label);
        *out = {n.mu_r, n.sigma_r, n.mu_dark};
    });
}

//---------------------------------------------------------------------------//
qrng_status qrng_adc_pmf(qrng_chip_params const* chip,
                         qrng_noise_params const* noise, double mu_e,
                         double tail_eps, double* out, size_t len)
{
    return guarded([&] {
        auto c = to_cpp(chip);
        auto n = to_cpp(noise);
        check(out, "output is null");
        check(len == static_cast<size_t>(c.num_codes()),
              "output length must be 2^adc_bits");
        auto pmf = adc_output_pmf(SourceParams{mu_e}, n, c, tail_eps);
        for (size_t z = 0; z < len; ++z)
            out[z] = pmf(static_cast<std::int64_t>(z));
    });
}

qrng_status qrng_symbol_pmf(qrng_chip_params const* chip, double const* pmf_z,
                            size_t len, double out[4])
{
    return guarded([&] {
        auto c = to_cpp(chip);
        check(pmf_z && out, "input or output is null");
        check(len == static_cast<size_t>(c.num_codes()),
              "input length must be 2^adc_bits");
        Pmf pz(0, std::vector<double>(pmf_z, pmf_z + len));
        auto ps = symbol_pmf(pz, c);
        for (int s = 0; s < 4; ++s)
            out[s] = ps(s);
    });
}

qrng_status qrng_extract_symbol(qrng_chip_params const* chip, int z, int* out)
{
    return guarded([&] {
        auto c = to_cpp(chip);
        check(out, "output is null");
        *out = extract_symbol(z, c);
    });
}

qrng_status qrng_noise_pdf(qrng_chip_params const* chip,
                           qrng_noise_params const* noise, double e,
                           double tail_eps, double* out)
{
    return guarded([&] {
        auto c = to_cpp(chip);
        auto n = to_cpp(noise);
        check(out, "output is null");
        *out = noise_pdf(e, n, c, tail_eps);
    });
}

qrng_status qrng_conditional_symbol_pmf(qrng_chip_params const* chip,
                                        double mu_e, double e, double tail_eps,
                                        double out[4])
{
    return guarded([&] {
        auto c = to_cpp(chip);
        check(out, "output is null");
        auto pmf = conditional_symbol_pmf(e, SourceParams{mu_e}, c, tail_eps);
        for (int s = 0; s < 4; ++s)
            out[s] = pmf(s);
    });
}

qrng_status qrng_entropy_conditional(qrng_chip_params const* chip,
                                     qrng_noise_params const* noise,
                                     double mu_e, qrng_quadrature const* quad,
                                     qrng_entropy_result* out)
{
    return guarded([&] {
        auto c = to_cpp(chip);
        auto n = to_cpp(noise);
        check(out, "output is null");
        to_c(min_entropy_conditional(SourceParams{mu_e}, n, c, to_cpp(quad)),
             out);
    });
}

qrng_status qrng_entropy_unconditional(qrng_chip_params const* chip,
                                       qrng_noise_params const* noise,
                                       double mu_e, double tail_eps,
                                       qrng_entropy_result* out)
{
    return guarded([&] {
        auto c = to_cpp(chip);
        auto n = to_cpp(noise);
        check(out, "output is null");
        auto pz = adc_output_pmf(SourceParams{mu_e}, n, c, tail_eps);
        to_c(min_entropy_unconditional(symbol_pmf(pz, c)), out);
    });
}

qrng_status qrng_entropy_curve(qrng_chip_params const* chip,
                               qrng_noise_params const* noise,
                               double const* grid, size_t n,
                               qrng_quadrature const* quad,
                               qrng_entropy_result* out, size_t* failed_index)
{
    return guarded([&] {
        auto c = to_cpp(chip);
        auto nz = to_cpp(noise);
        check(grid && out, "grid or output is null");
        std::span<double const> g(grid, n);
        try
        {
            auto curve = entropy_curve(g, nz, c, to_cpp(quad));
            for (size_t i = 0; i < n; ++i)
                to_c(curve[i].result, &out[i]);
        }
        catch (ConvergenceError const& e)
        {
            if (failed_index)
            {
                for (size_t i = 0; i < n; ++i)
                    if (grid[i] == e.mu_e())
                        *failed_index = i;
            }
            throw;
        }
    });
}

//---------------------------------------------------------------------------//
qrng_status qrng_model_create(qrng_chip_params const* chip, size_t num_pixels,
                              double const* mu_e,
                              qrng_noise_params const* noise, qrng_model** out)
{
    return guarded([&] {
        check(out, "output is null");
        check(mu_e && noise, "pixel arrays are null");
        auto handle = std::make_unique<qrng_model>();
        handle->model.chip = to_cpp(chip);
        for (size_t i = 0; i < num_pixels; ++i)
        {
            handle->model.pixels.push_back(
                {SourceParams{mu_e[i]}, to_cpp(&noise[i])});
        }
        handle->model.validate();
        *out = handle.release();
    });
}

void qrng_model_destroy(qrng_model* model)
{
    delete model;
}

size_t qrng_model_num_pixels(qrng_model const* model)
{
    return model ? model->model.pixels.size() : 0;
}

qrng_status qrng_model_digest(qrng_model const* model, uint64_t* out)
{
    return guarded([&] {
        check(model && out, "model or output is null");
        *out = model_digest(model->model);
    });
}

//---------------------------------------------------------------------------//
qrng_status qrng_sample_frames(qrng_model const* model, uint32_t t_frames,
                               uint64_t seed, qrng_batch** out)
{
    return guarded([&] {
        check(model && out, "model or output is null");
        auto handle = std::make_unique<qrng_batch>();
        handle->batch = sample_frames(model->model, t_frames, seed);
        *out = handle.release();
    });
}

qrng_status qrng_batch_from_codes(uint32_t t_frames, uint32_t num_pixels,
                                  int adc_bits, uint16_t const* codes,
                                  qrng_batch** out)
{
    return guarded([&] {
        check(codes && out, "codes or output is null");
        auto handle = std::make_unique<qrng_batch>();
        auto& b = handle->batch;
        b.t_frames = t_frames;
        b.num_pixels = num_pixels;
        b.adc_bits = adc_bits;
        b.codes.assign(codes,
                       codes + static_cast<size_t>(t_frames) * num_pixels);
        b.validate();
        *out = handle.release();
    });
}

void qrng_batch_destroy(qrng_batch* batch)
{
    delete batch;
}

qrng_status qrng_batch_info(qrng_batch const* batch, uint32_t* t_frames,
                            uint32_t* num_pixels, int* adc_bits,
                            uint64_t* seed, uint64_t* model_digest)
{
    return guarded([&] {
        check(batch, "batch is null");
        auto const& b = batch->batch;
        if (t_frames)
            *t_frames = b.t_frames;
        if (num_pixels)
            *num_pixels = b.num_pixels;
        if (adc_bits)
            *adc_bits = b.adc_bits;
        if (seed)
            *seed = b.seed;
        if (model_digest)
            *model_digest = b.model_digest;
    });
}

uint16_t const* qrng_batch_codes(qrng_batch const* batch)
{
    return batch ? batch->batch.codes.data() : nullptr;
}

qrng_status qrng_batch_hash(qrng_batch const* batch, uint64_t* out)
{
    return guarded([&] {
        check(batch && out, "batch or output is null");
        *out = batch_hash(batch->batch);
    });
}

qrng_status qrng_frames_write(qrng_batch const* batch, char const* path)
{
    return guarded([&] {
        check(batch && path, "batch or path is null");
        write_frames(path, batch->batch);
    });
}

qrng_status qrng_frames_read(char const* path, qrng_batch** out)
{
    return guarded([&] {
        check(path && out, "path or output is null");
        auto handle = std::make_unique<qrng_batch>();
        handle->batch = read_frames(path);
        *out = handle.release();
    });
}

qrng_status qrng_export_bitstream(qrng_batch const* batch,
                                  qrng_chip_params const* chip, uint8_t* out,
                                  size_t capacity, size_t* written)
{
    return guarded([&] {
        check(batch && written, "batch or size output is null");
        auto c = to_cpp(chip);
        size_t needed = (batch->batch.codes.size() + 3) / 4;
        *written = needed;
        if (!out)
            return;
        check(capacity >= needed, "output buffer too small");
        auto bytes = export_bitstream(batch->batch, c);
        std::memcpy(out, bytes.data(), bytes.size());
    });
}

qrng_status qrng_bytes_write(char const* path, uint8_t const* data, size_t len)
{
    return guarded([&] {
        check(path && (data || len == 0), "path or data is null");
        write_bytes(path, std::span<std::uint8_t const>(data, len));
    });
}

qrng_status qrng_bytes_read(char const* path, uint8_t** data, size_t* len)
{
    return guarded([&] {
        check(path && data && len, "null argument");
        auto bytes = read_bytes(path);
        auto* buffer = new uint8_t[bytes.empty() ? 1 : bytes.size()];
        std::memcpy(buffer, bytes.data(), bytes.size());
        *data = buffer;
        *len = bytes.size();
    });
}

void qrng_bytes_free(uint8_t* data)
{
    delete[] data;
}

//---------------------------------------------------------------------------//
qrng_status qrng_pearson_matrix(qrng_batch const* batch, double* out,
                                size_t len)
{
    return guarded([&] {
        check(batch && out, "batch or output is null");
        size_t p = batch->batch.num_pixels;
        check(len == p * p, "output length must be P*P");
        auto m = pearson_matrix(batch->batch);
        for (size_t i = 0; i < len; ++i)
            out[i] = m.values[i] ? *m.values[i] : undefined;
    });
}

qrng_status qrng_autocorrelation(qrng_batch const* batch, size_t pixel,
                                 size_t max_lag, double* out, size_t len)
{
    return guarded([&] {
        check(batch && out, "batch or output is null");
        check(len == max_lag, "output length must equal max_lag");
        require(max_lag < batch->batch.t_frames,
                "max_lag must be below the frame count");
        auto rho = autocorrelation(batch->batch, pixel, max_lag);
        for (size_t l = 0; l < max_lag; ++l)
            out[l] = rho ? (*rho)[l] : undefined;
    });
}

qrng_status qrng_variance_mean_fit(qrng_batch const* const* batches, size_t n,
                                   size_t pixel, qrng_var_mean_fit* out)
{
    return guarded([&] {
        check(batches && out, "batches or output is null");
        std::vector<FrameBatch> copies;
        copies.reserve(n);
        for (size_t i = 0; i < n; ++i)
        {
            check(batches[i], "batch is null");
            copies.push_back(batches[i]->batch);
        }
        auto fit = variance_mean_fit(copies, pixel);
        *out = {fit.slope, fit.intercept, fit.r_squared};
    });
}

qrng_status qrng_code_histogram(qrng_batch const* batch, size_t pixel,
                                double* out, size_t len)
{
    return guarded([&] {
        check(batch && out, "batch or output is null");
        auto counts = code_histogram(batch->batch, pixel);
        check(len == counts.size(), "output length must be 2^adc_bits");
        std::copy(counts.begin(), counts.end(), out);
    });
}

qrng_status qrng_fit_noise(double const* counts, size_t len,
                           qrng_chip_params const* chip,
                           qrng_noise_params const* init,
                           qrng_fit_options const* options,
                           qrng_noise_fit* out)
{
    return guarded([&] {
        check(counts && out, "counts or output is null");
        auto c = to_cpp(chip);
        auto guess = to_cpp(init);
        NoiseFitOptions opts;
        if (options)
        {
            opts.fit_gain = options->fit_gain != 0;
            opts.max_iterations = options->max_iterations;
            opts.tolerance = options->tolerance;
            opts.clip_limit = options->clip_limit;
            opts.min_total_count = options->min_total_count;
        }
        auto fit = fit_noise_model(std::span<double const>(counts, len), c,
                                   guess, opts);
        *out = {};
        out->params = {fit.params.mu_r, fit.params.sigma_r,
                       fit.params.mu_dark};
        out->gain_k = fit.gain_k;
        out->neg_log_likelihood = fit.neg_log_likelihood;
        out->chi2 = fit.chi2;
        out->chi2_dof = fit.chi2_dof;
        out->num_params = static_cast<int>(fit.std_errors.size());
        for (int i = 0; i < 4; ++i)
            out->std_errors[i] = undefined;
        for (int i = 0; i < 16; ++i)
            out->covariance[i] = undefined;
        std::copy(fit.std_errors.begin(), fit.std_errors.end(),
                  out->std_errors);
        std::copy(fit.covariance.begin(), fit.covariance.end(),
                  out->covariance);
        out->iterations = fit.iterations;
    });
}

qrng_status qrng_mcv_entropy(uint8_t const* bits, size_t len, int symbol_bits,
                             qrng_mcv_result* out)
{
    return guarded([&] {
        check(out && (bits || len == 0), "input or output is null");
        auto r = mcv_entropy(std::span<std::uint8_t const>(bits, len),
                             symbol_bits);
        *out = {r.num_symbols, r.p_hat, r.p_upper, r.h_per_symbol,
                r.h_per_bit};
    });
}

//---------------------------------------------------------------------------//
qrng_status qrng_judge_frame(uint16_t const* codes, size_t n,
                             qrng_health_config const* cfg,
                             qrng_frame_verdict* out)
{
    return guarded([&] {
        check((codes || n == 0) && out, "codes or output is null");
        auto v = judge_frame(std::span<std::uint16_t const>(codes, n),
                             to_cpp(cfg));
        *out = {v.n_minus, v.n_plus, v.failed ? 1 : 0};
    });
}

qrng_status qrng_failure_probability(qrng_model const* model,
                                     qrng_health_config const* cfg,
                                     double tail_eps, double* p_fail,
                                     double* p_pass)
{
    return guarded([&] {
        check(model && p_fail, "model or output is null");
        auto f = failure_probability(model->model, to_cpp(cfg), tail_eps);
        *p_fail = f.p_fail;
        if (p_pass)
            *p_pass = f.p_pass;
    });
}

qrng_status qrng_health_sweep(qrng_model const* model, double const* grid,
                              size_t n, qrng_health_config const* cfg,
                              qrng_quadrature const* quad,
                              double const* efficiency, qrng_sweep_point* out)
{
    return guarded([&] {
        check(model && grid && out, "model, grid or output is null");
        std::span<double const> eff;
        if (efficiency)
            eff = {efficiency, model->model.pixels.size()};
        auto sweep = health_sweep(std::span<double const>(grid, n),
                                  model->model, to_cpp(cfg), to_cpp(quad), eff);
        for (size_t i = 0; i < n; ++i)
            out[i] = to_c(sweep[i]);
    });
}

qrng_status qrng_verify_guarantee(qrng_sweep_point const* sweep, size_t n,
                                  qrng_health_config const* cfg, int* holds,
                                  size_t* witness_indices, size_t capacity,
                                  size_t* num_witnesses)
{
    return guarded([&] {
        check((sweep || n == 0) && holds, "sweep or output is null");
        std::vector<HealthSweepPoint> points;
        for (size_t i = 0; i < n; ++i)
            points.push_back(to_cpp(sweep[i]));
        auto cfg_cpp = to_cpp(cfg);
        auto verdict = verify_guarantee(points, cfg_cpp);
        *holds = verdict.holds ? 1 : 0;
        // Recover indices by matching witnesses back onto the sweep order
        size_t count = 0;
        size_t next = 0;
        for (size_t i = 0; i < n && next < verdict.witnesses.size(); ++i)
        {
            if (sweep[i].mu_e == verdict.witnesses[next].mu_e
                && sweep[i].avg_h_min_per_bit
                       == verdict.witnesses[next].avg_h_min_per_bit)
            {
                if (witness_indices && count < capacity)
                    witness_indices[count] = i;
                ++count;
                ++next;
            }
        }
        if (num_witnesses)
            *num_witnesses = count;
    });
}

}  // extern "C"
