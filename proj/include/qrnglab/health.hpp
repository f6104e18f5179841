//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/health.hpp
//! Per-frame out-of-range health test and its analytic failure rate.
//---------------------------------------------------------------------------//
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core_model.hpp"
#include "sampler.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
/*!
 * Thresholds of the health test.
 *
 * A frame fails when more than n_minus_max codes lie below t_minus or more
 * than n_plus_max codes lie above t_plus. h_min_floor is in bits per
 * retained symbol.
 */
struct HealthConfig
{
    int t_minus{64};
    int t_plus{940};
    int n_minus_max{1};
    int n_plus_max{1};
    double h_min_floor{2 * 0.98};
    double epsilon{1e-6};
    //! Report entropy of pixels conditioned on their code being in range
    bool condition_on_acceptance{false};

    void validate(ChipParams const& chip) const;
};

struct FrameVerdict
{
    int n_minus{0};
    int n_plus{0};
    bool failed{false};
};

struct HealthSweepPoint
{
    double mu_e{0};
    double p_fail{0};
    //! 1 - p_fail, accumulated separately to keep precision near p_fail = 1
    double p_pass{1};
    double avg_h_min_per_bit{0};
};

struct GuaranteeVerdict
{
    bool holds{true};
    std::vector<HealthSweepPoint> witnesses;
};

//---------------------------------------------------------------------------//
FrameVerdict judge_frame(std::span<std::uint16_t const> frame,
                         HealthConfig const& cfg);

//! Failure and pass probabilities of one frame
struct FailureProbability
{
    double p_fail{0};
    double p_pass{1};
};

/*!
 * Exact frame failure probability.
 *
 * Each pixel is below, inside or above the window with probabilities from
 * its code pmf; a dynamic program over pixels tracks the joint counts
 * (n-, n+), capping each at its bound plus one.
 */
FailureProbability failure_probability(ArrayModel const& model,
                                       HealthConfig const& cfg,
                                       double tail_eps = default_tail_eps);

// Same dynamic program from per-pixel (below, above) probabilities
FailureProbability failure_probability(std::span<double const> q_minus,
                                       std::span<double const> q_plus,
                                       HealthConfig const& cfg);

/*!
 * Failure probability and mean per-bit conditional min-entropy over the
 * array for each mean photo-electron number in the grid.
 *
 * Pixel i is illuminated with mu_e * efficiency[i] (all ones when the span
 * is empty); every other parameter comes from the template model.
 */
std::vector<HealthSweepPoint>
health_sweep(std::span<double const> mu_e_grid, ArrayModel const& base_model,
             HealthConfig const& cfg, QuadratureSpec const& quad = {},
             std::span<double const> efficiency = {});

/*!
 * Check that frames pass with probability at most epsilon wherever the
 * average entropy is at or below the floor.
 */
GuaranteeVerdict verify_guarantee(std::span<HealthSweepPoint const> sweep,
                                  HealthConfig const& cfg,
                                  int symbol_bits = 2);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
