// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "poissinc/distributions.hpp"
#include "poissinc/improper.hpp"
#include "poissinc/pointprocess.hpp"
#include "poissinc/rng.hpp"
#include "poissinc/series.hpp"

namespace poissinc
{

//! One-sided Levy measure nu on (0, inf).
//!
//! - poisson_unit: nu = delta_1
//! - stable: nu(dx) = alpha x^(-alpha-1) dx, 0 < alpha < 1
//! - gamma_unit: nu(dx) = exp(-x)/x dx
class LevyModel
{
  public:
    enum class Kind
    {
        poisson_unit,
        stable,
        gamma_unit
    };

    static LevyModel poisson_unit();
    static LevyModel stable(double alpha);
    static LevyModel gamma_unit();

    Kind kind() const noexcept { return kind_; }
    double alpha() const noexcept { return alpha_; }

    //! (psi_r, psi_i) = (int (1 - cos theta x) nu(dx), int sin(theta x) nu(dx)).
    std::pair<double, double> psi(double theta) const;
    //! Laplace exponent int (1 - exp(-theta x)) nu(dx), theta >= 0.
    double laplace_exponent(double theta) const;
    //! G(x) = nu(x, inf), x > 0.
    double tail(double x) const;
    //! H = G^-1, u > 0. For poisson_unit H = 1 on (0, 1] and 0 beyond.
    double inverse_tail(double u) const;
    //! int_0^b u nu(du) and int_0^b u^2 nu(du).
    double truncated_first_moment(double b) const;
    double truncated_second_moment(double b) const;

    std::string to_string() const;

  private:
    Kind kind_ = Kind::poisson_unit;
    double alpha_ = 0;
};

//! "poisson", "stable(alpha=0.5)", "gamma".
LevyModel parse_levy_model(std::string_view text);

//---------------------------------------------------------------------------//
// Integrals over the time axis
//---------------------------------------------------------------------------//
struct IntegralVerdict
{
    enum class Kind
    {
        finite,
        divergent,
        inconclusive
    };

    Kind kind = Kind::inconclusive;
    std::optional<double> value;
    std::vector<ImproperWindow> trace;
    std::string note;
};

char const* to_string(IntegralVerdict::Kind k);

//! int_0^inf g(t) dt for g >= 0 over dyadic windows.
//!
//! Divergence is declared when the last 8 window contributions stay above
//! half of the first of them; an unresolved tail is inconclusive.
IntegralVerdict nonnegative_integral(RealIntegrand const& g, std::optional<double> support_end,
                                     double tolerance = 1e-6);

struct Modulars
{
    IntegralVerdict psi1;
    IntegralVerdict psi2;
};

//! Psi_1(f) = int int (|x f(t)| ^ 1) nu(dx) dt and Psi_2 with (x f(t))^2 ^ 1.
Modulars modulars(SeriesFunction const& f, LevyModel const& model);

//---------------------------------------------------------------------------//
// LePage series
//---------------------------------------------------------------------------//
struct LePagePath
{
    std::vector<double> markers;
    std::vector<double> heights;
    std::vector<std::complex<double>> partial;

    std::complex<double> value() const { return partial.empty() ? 0.0 : partial.back(); }
};

//! Partial sums of sum_n H(S_n p(V_n)) f(V_n) for n <= N with V_n drawn
//! from `marker` on the stream `marker_key`.
LePagePath lepage_evaluate(LevyModel const& model, MarkerDensity const& marker,
                           SeriesFunction const& f, ArrivalStream const& arrivals,
                           StreamKey marker_key, std::size_t n);

}  // namespace poissinc
