//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/core_model.hpp
//! Exact output distributions and min-entropies of the sensor model.
//---------------------------------------------------------------------------//
#pragma once

#include <optional>
#include <span>
#include <vector>

#include "params.hpp"
#include "pmf.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
/*!
 * Numerical settings for the guessing-probability integral.
 *
 * Each dark-electron component of the classical noise is integrated over
 * mean +/- range_sigmas * sigma_r. The interval is first split at every
 * point where some photo-electron count crosses an ADC step, so the
 * integrand is constant on each piece and only the Gaussian weight is
 * integrated (composite Gauss-Legendre). Panels are doubled until two
 * successive estimates differ by less than tolerance; a final difference
 * above divergence_limit is a ConvergenceError.
 */
struct QuadratureSpec
{
    double tail_eps{default_tail_eps};
    double range_sigmas{8.0};
    int gl_order{8};
    int initial_panels{1};
    int max_refinements{6};
    double tolerance{1e-6};
    double divergence_limit{1e-4};

    void validate() const;
};

//---------------------------------------------------------------------------//
/*!
 * Guessing probability and the derived min-entropy.
 *
 * p_guess already includes truncation_bound, the total probability mass
 * dropped by Poisson and Gaussian truncation, so the entropy is a
 * conservative value.
 */
struct EntropyResult
{
    double p_guess{1};
    double h_min_total{0};
    double h_min_per_bit{0};
    double truncation_bound{0};
    double quadrature_delta{0};
    int refinements{0};
};

//! Inclusive window of accepted ADC codes.
struct CodeWindow
{
    int lo{0};
    int hi{0};
};

//! Curve sample of entropy_curve.
struct CurvePoint
{
    double mu_e{0};
    EntropyResult result;
};

//---------------------------------------------------------------------------//
// Floor and clamp an ADC input voltage to a code
int quantize(double x, ChipParams const& chip);

// Classical-noise density at e (ADU): Poisson-weighted Gaussian mixture
double noise_pdf(double e, NoiseParams const& noise, ChipParams const& chip,
                 double tail_eps = default_tail_eps);

// Exact distribution of the ADC code
Pmf adc_output_pmf(SourceParams const& source, NoiseParams const& noise,
                   ChipParams const& chip,
                   double tail_eps = default_tail_eps);

// Retained 2-bit symbol of an ADC code
int extract_symbol(int z, ChipParams const& chip);

// Pushforward of a code pmf onto the retained symbols {0,1,2,3}
Pmf symbol_pmf(Pmf const& pmf_z, ChipParams const& chip);

// Distribution of the symbol given the full classical noise realization e
Pmf conditional_symbol_pmf(double e, SourceParams const& source,
                           ChipParams const& chip,
                           double tail_eps = default_tail_eps);

// Min-entropy of the symbol for an adversary who knows the classical noise
EntropyResult
min_entropy_conditional(SourceParams const& source, NoiseParams const& noise,
                        ChipParams const& chip,
                        QuadratureSpec const& quad = {},
                        std::optional<CodeWindow> accept = std::nullopt);

// Min-entropy of a symbol pmf with no side information
EntropyResult min_entropy_unconditional(Pmf const& pmf_symbols,
                                        int symbol_bits = 2);

// Conditional min-entropy per grid point; output order matches the grid
std::vector<CurvePoint> entropy_curve(std::span<double const> mu_e_grid,
                                      NoiseParams const& noise,
                                      ChipParams const& chip,
                                      QuadratureSpec const& quad = {});

//---------------------------------------------------------------------------//
}  // namespace qrnglab
