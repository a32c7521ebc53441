// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace poissinc
{

//! Invalid model or distribution parameters (e.g. Pareto index <= 1).
class ParameterError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Argument outside the domain of a map (division by S_n = 0, u <= 0, ...).
class DomainError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

//! |z| = 1: the increment law is degenerate.
class DegeneracyError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Quadrature or root finding failed; carries the tolerance actually reached.
class NumericError : public std::runtime_error
{
  public:
    NumericError(std::string const& what, double achieved)
        : std::runtime_error(what), achieved_(achieved)
    {
    }

    double achieved_tolerance() const noexcept { return achieved_; }

  private:
    double achieved_;
};

//! Requested combination of model, marker and route is not supported.
class UnsupportedError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

//! Numerical precondition check failed (e.g. amplitude not square integrable).
class PreconditionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

//! Arrival stream must be extended before the operation can proceed.
class ExtensionRequired : public std::out_of_range
{
  public:
    ExtensionRequired(std::string const& what, double needed_horizon)
        : std::out_of_range(what), horizon_(needed_horizon)
    {
    }

    double needed_horizon() const noexcept { return horizon_; }

  private:
    double horizon_;
};

//! Identity check between two algebraically equal routes failed.
class IdentityViolation : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace poissinc
