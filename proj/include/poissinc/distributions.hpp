// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "poissinc/rng.hpp"

namespace poissinc
{

//---------------------------------------------------------------------------//
// Increment laws X >= 0
//---------------------------------------------------------------------------//
struct Exponential
{
    double rate = 1;
};
//! Pareto type I on [scale, inf) with tail index `index`.
struct Pareto
{
    double index = 2;
    double scale = 1;
};
struct GammaLaw
{
    double shape = 1;
    double rate = 1;
};
struct Deterministic
{
    double value = 1;
};
struct UniformInterval
{
    double lo = 0;
    double hi = 1;
};

//! Law of the renewal increments. Immutable; validated on construction.
class DistributionSpec
{
  public:
    using Family = std::variant<Exponential, Pareto, GammaLaw, Deterministic, UniformInterval>;

    explicit DistributionSpec(Family family);

    Family const& family() const noexcept { return family_; }
    //! False only for point masses.
    bool nondegenerate() const noexcept;
    //! Infinite when the moment does not exist.
    double mean() const;
    double variance() const;
    //! Canonical `name(key=value,...)` form accepted by parse_distribution.
    std::string to_string() const;

  private:
    Family family_;
};

DistributionSpec parse_distribution(std::string_view text);

//! n i.i.d. draws; deterministic given the stream state.
std::vector<double> sample(DistributionSpec const& spec, std::size_t n, RngStream& stream);
double sample_one(DistributionSpec const& spec, RngStream& stream);

//! z = E exp(iX). Closed form except for Pareto, which goes through the
//! improper-integral engine to 1e-10 absolute.
std::complex<double> char_value(DistributionSpec const& spec);

//! z by quadrature of the density against exp(ix) (any family with a density).
std::complex<double> char_value_by_quadrature(DistributionSpec const& spec);

//! c_z = 1 + 2 Re(z / (1 - z)). Throws DegeneracyError when |z| = 1.
double cz_constant(DistributionSpec const& spec);
double cz_constant(std::complex<double> z);

//! Threshold on 1 - |z| below which a law counts as degenerate.
inline constexpr double kDegeneracyMargin = 1e-12;

//---------------------------------------------------------------------------//
// Marker densities for LePage series
//---------------------------------------------------------------------------//
//! p(x) = (r-1) x0^(r-1) x^-r on [x0, inf); `unnormalized` switches the
//! evaluation to p(x) = x^-r so that q(1/s) = s^(1/r).
struct ParetoTail
{
    double r = 2;
    double cutoff = 1;
    bool unnormalized = false;
};
//! p(v) = exp(-v) on [0, inf).
struct ExponentialUnit
{
};
//! p(v) = 1 on [0, 1]; not decreasing, so it has no tail inverse.
struct UniformUnit
{
};

class MarkerDensity
{
  public:
    using Family = std::variant<ParetoTail, ExponentialUnit, UniformUnit>;

    explicit MarkerDensity(Family family);

    Family const& family() const noexcept { return family_; }
    double density(double v) const;
    //! Inverse of the strictly decreasing branch of p. Throws
    //! UnsupportedError for markers without one.
    double inverse(double y) const;
    bool strictly_decreasing() const noexcept;
    //! Lower end of the support (where the density is evaluated).
    double support_lo() const noexcept;
    //! Upper end of the support (infinity for tails).
    double support_hi() const noexcept;
    //! Largest density value on the support.
    double max_density() const noexcept;
    std::string to_string() const;

  private:
    Family family_;
};

MarkerDensity parse_marker(std::string_view text);

std::vector<double> marker_sample(MarkerDensity const& md, std::size_t n, RngStream& stream);
double marker_sample_one(MarkerDensity const& md, RngStream& stream);

//---------------------------------------------------------------------------//
// `family(key=value,...)` parsing shared by the spec parsers
//---------------------------------------------------------------------------//
struct CallSyntax
{
    std::string name;
    std::vector<std::pair<std::string, std::string>> args;

    //! Numeric argument by key or position; throws ParameterError when absent.
    double number(std::string_view key, std::size_t position) const;
    double number_or(std::string_view key, std::size_t position, double fallback) const;
    std::string const* text(std::string_view key, std::size_t position) const;
};

CallSyntax parse_call(std::string_view text);
std::string format_number(double x);
//! Decimal number, or the constants "pi" and "pi/<number>".
double parse_number(std::string_view text, std::string_view what);

}  // namespace poissinc
