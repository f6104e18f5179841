//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/pmf.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qrnglab
{
//---------------------------------------------------------------------------//
/*!
 * Probability mass function over a contiguous integer range.
 *
 * Values outside [first, last] have zero probability. Used for ADC codes and
 * for the retained 2-bit symbols.
 */
class Pmf
{
  public:
    Pmf() = default;
    Pmf(std::int64_t first, std::vector<double> probs);

    static Pmf point_mass(std::int64_t value);
    static Pmf uniform(std::int64_t first, std::size_t count);

    std::int64_t first() const { return first_; }
    std::int64_t last() const
    {
        return first_ + static_cast<std::int64_t>(probs_.size()) - 1;
    }
    std::size_t size() const { return probs_.size(); }
    bool empty() const { return probs_.empty(); }

    //! Probability of a value (zero outside the support)
    double operator()(std::int64_t value) const;

    std::span<double const> probs() const { return probs_; }

    double total() const;
    double max_prob() const;
    std::int64_t mode() const;

    // Rescale so that the probabilities sum to one
    void normalize();

  private:
    std::int64_t first_{0};
    std::vector<double> probs_;
};

//---------------------------------------------------------------------------//
}  // namespace qrnglab
