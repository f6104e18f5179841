//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/noise_fit.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <span>
#include <vector>

#include "params.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
struct NoiseFitOptions
{
    bool fit_gain{false};
    int max_iterations{5000};
    double tolerance{1e-12};
    //! Largest allowed fraction of counts in the first or last code
    double clip_limit{0.01};
    double min_total_count{1e4};
};

/*!
 * Maximum-likelihood classical-noise parameters of a dark histogram.
 *
 * Parameter order in std_errors and covariance (row-major) is mu_r, sigma_r,
 * mu_dark and, when co-fitted, gain_k.
 */
struct NoiseFit
{
    NoiseParams params;
    double gain_k{0};
    double neg_log_likelihood{0};
    double chi2{0};
    int chi2_dof{0};
    std::vector<double> std_errors;
    std::vector<double> covariance;
    int iterations{0};
};

/*!
 * Fit the LED-off code histogram (counts indexed by code) with the model
 * pmf at zero photo-electrons.
 *
 * Nelder-Mead on the multinomial log-likelihood from several starts along
 * the mean-preserving line mu_r + K*mu_dark = const, since the comb of
 * dark-electron peaks makes the likelihood multimodal in mu_r. Standard
 * errors come from the inverse observed information. A histogram with more
 * than clip_limit of its mass in either rail code throws UnfittableError.
 */
NoiseFit fit_noise_model(std::span<double const> counts, ChipParams const& chip,
                         NoiseParams const& init,
                         NoiseFitOptions const& options = {});

// Readout mean at the default ADC setting, for a fit taken with the offset
// raised by shift_steps codes
NoiseParams to_default_offset(NoiseParams const& fitted, double shift_steps);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
