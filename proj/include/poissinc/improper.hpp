// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace poissinc
{

//! Real integrand on (start, inf) with optional interior discontinuities.
struct RealIntegrand
{
    std::function<double(double)> f;
    std::vector<double> breakpoints;
};

//! Exhaustion rule and acceleration for an improper integral over [start, inf).
//!
//! The integral is the limit of integrals over [start, e_k] along an
//! increasing sequence of window endpoints e_k. Half-period windows end at
//! anchor + j*pi, which makes the window integrals of f(x) = g(x) sin(x -
//! anchor) alternate when g is eventually monotone.
struct ImproperScheme
{
    enum class Exhaustion
    {
        half_periods,
        windows,
        dyadic
    };
    enum class Acceleration
    {
        none,
        euler
    };

    Exhaustion exhaustion = Exhaustion::half_periods;
    Acceleration acceleration = Acceleration::euler;
    double start = 0;
    //! Phase of the half-period grid (endpoints anchor + j*pi).
    double anchor = 0;
    //! First right endpoint of the dyadic rule; later ones double.
    double dyadic_first = 1;
    //! Explicit increasing endpoints (> start) for the windows rule.
    std::vector<double> endpoints;
    double tolerance = 1e-10;
    double window_tolerance = 1e-12;
    std::size_t max_windows = 200;
    //! Long windows are split into pieces no longer than this before quadrature.
    double max_piece = 3.14159265358979323846;
    //! Windows needing more pieces than this are reported as unresolved.
    std::size_t max_pieces_per_window = 20000;

    static ImproperScheme half_periods(double start = 0, double anchor = 0);
    static ImproperScheme dyadic(double start = 0, double first = 1);
    static ImproperScheme windows(double start, std::vector<double> endpoints);

    //! Right endpoint of window k (k = 0 is the first window).
    double endpoint(std::size_t k) const;
};

struct ImproperWindow
{
    std::size_t index = 0;
    double endpoint = 0;
    double contribution = 0;
    double partial_value = 0;
};

struct ImproperResult
{
    enum class Status
    {
        converged,
        non_convergent
    };
    enum class Method
    {
        cauchy,
        euler,
        geometric_tail,
        none
    };

    Status status = Status::non_convergent;
    Method method = Method::none;
    //! Withheld when the limit could not be established.
    std::optional<double> value;
    double achieved_tolerance = 0;
    std::size_t windows_used = 0;
    std::string note;
    std::vector<ImproperWindow> trace;

    bool converged() const { return status == Status::converged; }
};

char const* to_string(ImproperResult::Method m);

//! Evaluate lim_k int_start^{e_k} f(x) dx.
//!
//! Each window is integrated adaptively to the window tolerance. The limit
//! is accepted when (a) window contributions alternate and the Euler
//! transform of the alternating tail stabilizes, (b) contributions decay
//! geometrically and the extrapolated total stabilizes, or (c) the last
//! windows contribute less than the tolerance. Otherwise the result is a
//! non-convergence report with the value withheld.
ImproperResult improper_integral(RealIntegrand const& integrand, ImproperScheme const& scheme);

//! Euler transform of sum_j a_j for an alternating sequence a_0, a_1, ...
//! Returns the estimate using all terms and the magnitude of the last
//! transformed term.
std::pair<double, double> euler_alternating_sum(std::vector<double> const& terms);

}  // namespace poissinc
