//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/quadrature.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <vector>

namespace qrnglab
{
//---------------------------------------------------------------------------//
//! Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Build the rule of the given order (1..128) by Newton iteration on P_n
GaussLegendreRule gauss_legendre(int order);

/*!
 * Composite Gauss-Legendre integral over [a, b] split into equal panels.
 */
template<class F>
double integrate(F&& f, double a, double b, GaussLegendreRule const& rule,
                 int panels)
{
    double width = (b - a) / panels;
    double half = width / 2;
    double sum = 0;
    for (int p = 0; p < panels; ++p)
    {
        double mid = a + (p + 0.5) * width;
        double panel = 0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        {
            panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
        }
        sum += panel * half;
    }
    return sum;
}

//---------------------------------------------------------------------------//
// Standard normal helpers
double normal_pdf(double x, double mean, double sigma);
double normal_cdf(double z);
//! Upper tail 1 - Phi(z), accurate for large z
double normal_sf(double z);
//! Mass of N(mean, sigma^2) in [lo, hi); infinite bounds allowed
double normal_interval_mass(double lo, double hi, double mean, double sigma);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
