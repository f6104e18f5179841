//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file pmf.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qrnglab/errors.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
Pmf::Pmf(std::int64_t first, std::vector<double> probs)
    : first_(first), probs_(std::move(probs))
{
    for (double p : probs_)
    {
        require(p >= 0 && std::isfinite(p),
                "pmf entries must be finite and non-negative");
    }
}

Pmf Pmf::point_mass(std::int64_t value)
{
    return Pmf(value, {1.0});
}

Pmf Pmf::uniform(std::int64_t first, std::size_t count)
{
    require(count > 0, "uniform pmf needs a non-empty support");
    return Pmf(first, std::vector<double>(count, 1.0 / count));
}

double Pmf::operator()(std::int64_t value) const
{
    if (value < first_ || value > this->last())
    {
        return 0.0;
    }
    return probs_[static_cast<std::size_t>(value - first_)];
}

double Pmf::total() const
{
    return std::accumulate(probs_.begin(), probs_.end(), 0.0);
}

double Pmf::max_prob() const
{
    return probs_.empty() ? 0.0
                          : *std::max_element(probs_.begin(), probs_.end());
}

std::int64_t Pmf::mode() const
{
    require(!probs_.empty(), "mode of an empty pmf");
    auto iter = std::max_element(probs_.begin(), probs_.end());
    return first_ + (iter - probs_.begin());
}

void Pmf::normalize()
{
    double sum = this->total();
    require(sum > 0, "cannot normalize a pmf with zero mass");
    for (double& p : probs_)
    {
        p /= sum;
    }
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
