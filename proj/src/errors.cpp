//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file errors.cpp
//---------------------------------------------------------------------------//
#include "qrnglab/errors.hpp"

namespace qrnglab
{
//---------------------------------------------------------------------------//
ConvergenceError::ConvergenceError(std::string const& what,
                                   double mu_e,
                                   double delta)
    : Error(what), mu_e_(mu_e), delta_(delta)
{
}

void require(bool condition, char const* message)
{
    if (!condition)
    {
        throw DomainError(message);
    }
}

//---------------------------------------------------------------------------//
}  // namespace qrnglab
