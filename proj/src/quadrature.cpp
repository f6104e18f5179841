//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file quadrature.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "qrnglab/errors.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
GaussLegendreRule gauss_legendre(int order)
{
    require(order >= 1 && order <= 128, "Gauss-Legendre order must be 1..128");
    GaussLegendreRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);

    int const n = order;
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        // Tricomi initial guess for the i-th root
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                double pk = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            if (n == 1)
            {
                p0 = 1;
            }
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16)
                break;
        }
        double w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n == 1)
    {
        rule.nodes[0] = 0;
        rule.weights[0] = 2;
    }
    return rule;
}

double normal_pdf(double x, double mean, double sigma)
{
    double z = (x - mean) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2 * std::numbers::pi));
}

double normal_cdf(double z)
{
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_sf(double z)
{
    return 0.5 * std::erfc(z / std::numbers::sqrt2);
}

double normal_interval_mass(double lo, double hi, double mean, double sigma)
{
    if (!(hi > lo))
        return 0.0;
    double zlo = (lo - mean) / sigma;
    double zhi = (hi - mean) / sigma;
    // Work in whichever tail keeps the difference of small numbers
    if (zlo >= 0)
        return normal_sf(zlo) - normal_sf(zhi);
    if (zhi <= 0)
        return normal_cdf(zhi) - normal_cdf(zlo);
    return 1 - normal_cdf(zlo) - normal_sf(zhi);
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
