// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "poissinc/distributions.hpp"
#include "poissinc/improper.hpp"
#include "poissinc/levy.hpp"
#include "poissinc/numeric.hpp"
#include "poissinc/series.hpp"

namespace poissinc
{

//! Truncated moments of H(s p(V)) f(V), V ~ marker, at cut-off c:
//! K1 = P(|Hf| > c), K2 = E[Hf; |Hf| <= c], K3 = E[|Hf|^2; |Hf| <= c].
struct KFunctionSet
{
    MarkerDensity marker;
    LevyModel model;
    SeriesFunction f;
    double cutoff = 1;
};

struct KValues
{
    double k1 = 0;
    std::complex<double> k2;
    double k3 = 0;
};

enum class KRoute
{
    //! reduction when the model is poisson_unit and the marker decreases
    automatic,
    //! K2(s) = int_{a(s)}^inf f p with a(s) = q(1/s); poisson_unit only
    reduction,
    //! quadrature of the defining expectations
    quadrature
};

struct KOptions
{
    KRoute route = KRoute::automatic;
    //! Target accuracy relative to the size of the integrand near a(s).
    double rel_tol = 1e-9;
};

//! a(s) = q(1/s), clamped to the lower end of the marker support.
double reduction_lower_limit(MarkerDensity const& marker, double s);

KValues k_functions(KFunctionSet const& set, double s, KOptions const& opts = {});

//! |K2(s)| computed with the analytic companion of f (sinc -> exp(ix)/x).
double k_envelope(KFunctionSet const& set, double s, KOptions const& opts = {});

//! K2(s) for poisson_unit, exponential marker and sinc: Im E1((1 - i) ln s), s > 1.
double exponential_marker_k(double s);

//! lim int_start^{e_k} g over half-period windows with phase anchor, for
//! each of Re g and Im g (the imaginary part anchored a quarter period earlier).
std::complex<double> oscillatory_tail(std::function<std::complex<double>(double)> const& g,
                                      double start, double phase, std::vector<double> const& breaks,
                                      double rel_tol);

//---------------------------------------------------------------------------//
struct EnvelopeFit
{
    std::vector<double> s;
    std::vector<double> envelope;
    LinearFit fit;
    //! Trapezoid over the grid plus a power-law tail when the slope is below -1.
    std::optional<double> abs_integral;
};

struct ThreeSeriesReport
{
    //! int G(c/|f(v)|) dv
    IntegralVerdict k1;
    //! int |f|^2 m2(c/|f|) dv with m2(b) = int_0^b u^2 nu(du)
    IntegralVerdict k3;
    //! int f m1(c/|f|) dv as an improper integral (real and imaginary parts)
    ImproperResult k2_real;
    std::optional<ImproperResult> k2_imag;
    //! |K2(s)| on the s grid, when one is supplied
    std::optional<EnvelopeFit> k2_envelope;
};

ThreeSeriesReport three_series_check(KFunctionSet const& set, std::vector<double> const& s_grid = {},
                                     KOptions const& opts = {});

//---------------------------------------------------------------------------//
//! K(s) = int_a^inf B(x) e^{ix} x^-r dx with B = A/x and a = s^(1/r), split as
//! i (B(a) e^{ia} a^-r + int_a B' e^{ix} x^-r - r int_a B e^{ix} x^-(r+1)).
struct AmplitudeRow
{
    double s = 0;
    double a = 0;
    std::complex<double> quotient;
    std::complex<double> first_integral;
    std::complex<double> second_integral;
    std::complex<double> direct;
    double mismatch = 0;
};

struct AmplitudeReport
{
    std::string amplitude;
    double r = 0;
    IntegralVerdict l2_tail;
    IntegralVerdict l1_derivative_tail;
    std::vector<AmplitudeRow> rows;
    std::optional<double> abs_integral;
};

//! Throws PreconditionError when B is not square integrable or B' not
//! integrable on [1, inf), and IdentityViolation when the components miss
//! the direct value by more than 1e-8 relative.
AmplitudeReport amplitude_k_bound(Amplitude const& amplitude, double r, std::vector<double> const& s_grid);

void write_k_sweep_csv(std::vector<double> const& s, std::vector<KValues> const& values, std::ostream& os);

}  // namespace poissinc
