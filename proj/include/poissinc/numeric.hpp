// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

#include "poissinc/errors.hpp"

namespace poissinc
{

using cplx = std::complex<double>;

//---------------------------------------------------------------------------//
// Compensated summation
//---------------------------------------------------------------------------//
//! Neumaier's variant of Kahan summation.
class CompensatedSum
{
  public:
    CompensatedSum& operator+=(double x) noexcept
    {
        double const t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
        return *this;
    }
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0;
    double comp_ = 0;
};

class ComplexCompensatedSum
{
  public:
    ComplexCompensatedSum& operator+=(cplx x) noexcept
    {
        re_ += x.real();
        im_ += x.imag();
        return *this;
    }
    cplx value() const noexcept { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum re_;
    CompensatedSum im_;
};

//---------------------------------------------------------------------------//
// Adaptive Gauss-Kronrod (7/15) quadrature
//---------------------------------------------------------------------------//
struct QuadratureOptions
{
    double abs_tol = 1e-12;
    double rel_tol = 1e-13;
    std::size_t max_intervals = 4000;
};

template<class T>
struct QuadratureResult
{
    T value{};
    double error = 0;
    std::size_t intervals = 0;
};

namespace detail
{
inline constexpr double kGkNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes 1, 3, 5, 7 of the Kronrod set.
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template<class T>
double magnitude(T const& x)
{
    using std::abs;
    return abs(x);
}

template<class T>
struct Segment
{
    double a;
    double b;
    T value;
    double error;
    bool operator<(Segment const& other) const { return error < other.error; }
};

template<class T, class F>
Segment<T> gk15(F const& f, double a, double b)
{
    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    T const fc = f(center);
    T kronrod = fc * kKronrodWeights[7];
    T gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j)
    {
        double const dx = half * kGkNodes[j];
        T const pair = f(center - dx) + f(center + dx);
        kronrod += pair * kKronrodWeights[j];
        if (j % 2 == 1)
            gauss += pair * kGaussWeights[j / 2];
    }
    return {a, b, kronrod * half, magnitude((kronrod - gauss) * half)};
}
}  // namespace detail

//! Globally adaptive G7K15 quadrature on a finite interval.
//!
//! Refines the worst segment until the summed error estimate is below
//! max(abs_tol, rel_tol * |value|). Throws NumericError with the achieved
//! error when the interval budget runs out.
template<class F>
auto integrate(F const& f, double a, double b, QuadratureOptions const& opts = {})
    -> QuadratureResult<decltype(f(a))>
{
    using T = decltype(f(a));
    if (a == b)
        return {T{}, 0.0, 0};

    std::priority_queue<detail::Segment<T>> heap;
    auto first = detail::gk15<T>(f, a, b);
    T total = first.value;
    double error = first.error;
    heap.push(first);

    while (error > std::max(opts.abs_tol, opts.rel_tol * detail::magnitude(total)))
    {
        if (heap.size() >= opts.max_intervals)
        {
            throw NumericError("adaptive quadrature did not reach tolerance", error);
        }
        auto worst = heap.top();
        heap.pop();
        double const mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
        {
            throw NumericError("adaptive quadrature: segment cannot be split", error);
        }
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }

    // Re-sum the segments to drop the drift of the running updates.
    T resummed{};
    double err_sum = 0;
    std::size_t const count = heap.size();
    while (!heap.empty())
    {
        resummed += heap.top().value;
        err_sum += heap.top().error;
        heap.pop();
    }
    return {resummed, err_sum, count};
}

//! Integrate over [a, b] after splitting at the given interior breakpoints.
template<class F>
auto integrate_piecewise(F const& f, double a, double b, std::span<double const> breaks,
                         QuadratureOptions const& opts = {})
    -> QuadratureResult<decltype(f(a))>
{
    using T = decltype(f(a));
    std::vector<double> cuts{a};
    for (double x : breaks)
    {
        if (x > a && x < b)
            cuts.push_back(x);
    }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    QuadratureResult<T> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    {
        auto const piece = integrate(f, cuts[i], cuts[i + 1], opts);
        out.value += piece.value;
        out.error += piece.error;
        out.intervals += piece.intervals;
    }
    return out;
}

//---------------------------------------------------------------------------//
// Least squares
//---------------------------------------------------------------------------//
struct LinearFit
{
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
    double residual_rms = 0;
};

//! Ordinary least squares y = intercept + slope * x. Requires >= 2 points.
LinearFit fit_line(std::span<double const> x, std::span<double const> y);

//! Fit of log(y) on log(x); all entries must be positive.
LinearFit fit_loglog(std::span<double const> x, std::span<double const> y);

//! n points geometrically spaced from lo to hi inclusive.
std::vector<double> geometric_grid(double lo, double hi, std::size_t n);

//! 2^lo, ..., 2^hi.
std::vector<std::size_t> dyadic_grid(unsigned lo_exp, unsigned hi_exp);

}  // namespace poissinc
