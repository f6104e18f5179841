//---------------------------------*-C++-*-----------------------------------//
// Copyright 2026 qrng-lab contributors
// SPDX-License-Identifier: Apache-2.0
//---------------------------------------------------------------------------//
//! \file qrnglab/errors.hpp
//---------------------------------------------------------------------------//
#pragma once

#include <stdexcept>
#include <string>

namespace qrnglab
{
//---------------------------------------------------------------------------//
//! Base class for all library errors.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! Argument outside the mathematical domain of an operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Adaptive quadrature did not settle; carries the offending mean signal.
class ConvergenceError : public Error
{
  public:
    ConvergenceError(std::string const& what, double mu_e, double delta);

    double mu_e() const { return mu_e_; }
    double delta() const { return delta_; }

  private:
    double mu_e_;
    double delta_;
};

//! Noise-model fit failed (non-convergence or unusable histogram).
class FitError : public Error
{
  public:
    using Error::Error;
};

//! Histogram rejected before fitting because it is clipped at the rails.
class UnfittableError : public FitError
{
  public:
    using FitError::FitError;
};

//! File could not be read or written.
class IoError : public Error
{
  public:
    using Error::Error;
};

//! File content does not match the expected binary layout.
class FormatError : public Error
{
  public:
    using Error::Error;
};

// Throw a DomainError with the given message unless the condition holds
void require(bool condition, char const* message);

//---------------------------------------------------------------------------//
}  // namespace qrnglab
