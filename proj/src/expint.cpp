// SPDX-License-Identifier: Apache-2.0
#include "poissinc/expint.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "poissinc/errors.hpp"

namespace poissinc
{
namespace
{
constexpr int kMaxTerms = 5000;
constexpr double kEps = 1e-16;

template<class T>
T e1_series(T w)
{
    // E1(w) = -gamma - log w - sum_k (-w)^k / (k k!)
    T sum{};
    T term{1};
    for (int k = 1; k < kMaxTerms; ++k)
    {
        term *= -w / static_cast<double>(k);
        T const add = term / static_cast<double>(k);
        sum += add;
        if (std::abs(add) <= kEps * std::abs(sum))
            return -std::numbers::egamma - std::log(w) - sum;
    }
    throw NumericError("E1 power series did not converge", std::abs(term));
}

template<class T>
T e1_continued_fraction(T w)
{
    // modified Lentz on E1(w) = exp(-w) / (w + 1 - 1/(w + 3 - 4/(w + 5 - ...)))
    constexpr double tiny = 1e-300;
    T b = w + 1.0;
    T c = 1.0 / tiny;
    T d = 1.0 / b;
    T h = d;
    for (int k = 1; k < kMaxTerms; ++k)
    {
        double const a = -static_cast<double>(k) * static_cast<double>(k);
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        T const delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps)
            return h * std::exp(-w);
    }
    throw NumericError("E1 continued fraction did not converge", std::abs(h));
}
}  // namespace

double expint_e1(double x)
{
    if (!(x > 0))
        throw DomainError("E1(x) requires x > 0");
    if (std::isinf(x))
        return 0;
    return x <= 1 ? e1_series(x) : e1_continued_fraction(x);
}

std::complex<double> expint_e1(std::complex<double> w)
{
    if (w.imag() == 0 && !(w.real() > 0))
        throw DomainError("E1(w) is not defined on the non-positive real axis");
    return std::abs(w) <= 2 ? e1_series(w) : e1_continued_fraction(w);
}

double expint_e1_inverse(double u)
{
    if (!(u > 0) || std::isinf(u))
        throw DomainError("E1 inverse requires 0 < u < inf");
    // Newton on log E1 in t = log x (d log E1/dt = -exp(-x)/E1), safeguarded by a bracket.
    double lo = -745, hi = std::log(800.0);
    double const target = std::log(u);
    double t = u > 1 ? -std::numbers::egamma - u : std::log(-std::log(u) + 1e-300 + 0.5);
    if (!std::isfinite(t) || t <= lo || t >= hi)
        t = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it)
    {
        double const x = std::exp(t);
        double const e1 = expint_e1(x);
        double const g = std::log(e1) - target;
        if (g == 0)
            return x;
        // E1 decreases in t
        if (g > 0)
            lo = t;
        else
            hi = t;
        double next = t + g * e1 * std::exp(x);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 4 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)) ||
            hi - lo <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            return std::exp(next);
        t = next;
    }
    throw NumericError("E1 inverse did not converge", hi - lo);
}

}  // namespace poissinc
