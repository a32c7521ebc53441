// SPDX-License-Identifier: Apache-2.0
#include "poissinc/improper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "poissinc/errors.hpp"
#include "poissinc/numeric.hpp"

namespace poissinc
{
namespace
{
constexpr std::size_t kMinWindows = 8;
constexpr std::size_t kRunLength = 8;
constexpr double kMaxGeometricRatio = 0.95;

int sign_of(double x)
{
    return (x > 0) - (x < 0);
}

double integrate_window(RealIntegrand const& integrand, double lo, double hi,
                        ImproperScheme const& scheme, double& error)
{
    auto const pieces = static_cast<std::size_t>(
        std::max(1.0, std::ceil((hi - lo) / scheme.max_piece)));
    if (pieces > scheme.max_pieces_per_window)
        throw NumericError("window too long to resolve", hi - lo);
    QuadratureOptions opts;
    opts.abs_tol = std::max(scheme.window_tolerance / static_cast<double>(pieces), 1e-16);
    opts.rel_tol = 1e-14;
    CompensatedSum sum;
    error = 0;
    double const step = (hi - lo) / static_cast<double>(pieces);
    for (std::size_t p = 0; p < pieces; ++p)
    {
        double const a = lo + step * static_cast<double>(p);
        double const b = (p + 1 == pieces) ? hi : lo + step * static_cast<double>(p + 1);
        auto const r = integrate_piecewise(integrand.f, a, b, integrand.breakpoints, opts);
        sum += r.value;
        error += r.error;
    }
    return sum.value();
}
}  // namespace

ImproperScheme ImproperScheme::half_periods(double start, double anchor)
{
    ImproperScheme s;
    s.exhaustion = Exhaustion::half_periods;
    s.start = start;
    s.anchor = anchor;
    return s;
}

ImproperScheme ImproperScheme::dyadic(double start, double first)
{
    if (!(first > start))
        throw ParameterError("dyadic scheme needs first endpoint > start");
    ImproperScheme s;
    s.exhaustion = Exhaustion::dyadic;
    s.start = start;
    s.dyadic_first = first;
    return s;
}

ImproperScheme ImproperScheme::windows(double start, std::vector<double> endpoints)
{
    double prev = start;
    for (double e : endpoints)
    {
        if (!(e > prev))
            throw ParameterError("window endpoints must increase strictly from start");
        prev = e;
    }
    ImproperScheme s;
    s.exhaustion = Exhaustion::windows;
    s.start = start;
    s.endpoints = std::move(endpoints);
    s.max_windows = s.endpoints.size();
    return s;
}

double ImproperScheme::endpoint(std::size_t k) const
{
    switch (exhaustion)
    {
        case Exhaustion::half_periods: {
            double const pi = std::numbers::pi;
            // first grid point strictly above start
            double j0 = std::floor((start - anchor) / pi) + 1;
            double e = anchor + j0 * pi;
            if (!(e > start))
                e += pi;
            return e + pi * static_cast<double>(k);
        }
        case Exhaustion::dyadic:
            return start + (dyadic_first - start) * std::ldexp(1.0, static_cast<int>(k));
        case Exhaustion::windows:
            if (k >= endpoints.size())
                throw ParameterError("window index beyond the explicit endpoint list");
            return endpoints[k];
    }
    return 0;
}

char const* to_string(ImproperResult::Method m)
{
    switch (m)
    {
        case ImproperResult::Method::cauchy:
            return "cauchy";
        case ImproperResult::Method::euler:
            return "euler";
        case ImproperResult::Method::geometric_tail:
            return "geometric_tail";
        case ImproperResult::Method::none:
            return "none";
    }
    return "?";
}

std::pair<double, double> euler_alternating_sum(std::vector<double> const& terms)
{
    // a_j = (-1)^j b_j; sum = sum_m (-1)^m (Delta^m b)_0 / 2^(m+1)
    std::vector<double> diff(terms.size());
    for (std::size_t j = 0; j < terms.size(); ++j)
        diff[j] = (j % 2 == 0) ? terms[j] : -terms[j];
    CompensatedSum sum;
    double scale = 0.5;
    double last = 0;
    for (std::size_t m = 0; m < terms.size(); ++m)
    {
        last = ((m % 2 == 0) ? diff[0] : -diff[0]) * scale;
        sum += last;
        for (std::size_t j = 0; j + 1 < terms.size() - m; ++j)
            diff[j] = diff[j + 1] - diff[j];
        scale *= 0.5;
    }
    return {sum.value(), std::abs(last)};
}

ImproperResult improper_integral(RealIntegrand const& integrand, ImproperScheme const& scheme)
{
    if (!integrand.f)
        throw ParameterError("improper_integral: empty integrand");
    if (!(scheme.tolerance > 0) || scheme.max_windows == 0)
        throw ParameterError("improper_integral: tolerance and max_windows must be positive");

    ImproperResult result;
    std::vector<double> contrib;
    std::vector<double> partial;
    CompensatedSum running;
    double lo = scheme.start;

    std::size_t euler_head = static_cast<std::size_t>(-1);
    double prev_euler = 0;
    std::vector<double> geometric_history;

    for (std::size_t k = 0; k < scheme.max_windows; ++k)
    {
        double const hi = scheme.endpoint(k);
        double werr = 0;
        double w = 0;
        try
        {
            w = integrate_window(integrand, lo, hi, scheme, werr);
        }
        catch (NumericError const& e)
        {
            result.status = ImproperResult::Status::non_convergent;
            result.windows_used = k;
            result.achieved_tolerance = e.achieved_tolerance();
            result.note = std::string("window quadrature failed on [") + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]: " + e.what();
            return result;
        }
        lo = hi;
        running += w;
        contrib.push_back(w);
        partial.push_back(running.value());
        result.trace.push_back({k, hi, w, running.value()});

        std::size_t const n = contrib.size();
        if (n < kMinWindows)
            continue;

        // (c) vanishing contributions
        bool small = true;
        double small_sum = 0;
        for (std::size_t j = n - 4; j < n; ++j)
        {
            small = small && std::abs(contrib[j]) <= 0.25 * scheme.tolerance;
            small_sum += std::abs(contrib[j]);
        }
        if (small)
        {
            result.status = ImproperResult::Status::converged;
            result.method = ImproperResult::Method::cauchy;
            result.value = partial.back();
            result.achieved_tolerance = small_sum;
            result.windows_used = n;
            return result;
        }

        // (a) alternating tail
        std::size_t alt_start = n - 1;
        while (alt_start > 0 && contrib[alt_start - 1] * contrib[alt_start] < 0)
            --alt_start;
        if (n - alt_start >= kRunLength)
        {
            std::vector<double> tail(contrib.begin() + static_cast<std::ptrdiff_t>(alt_start),
                                     contrib.end());
            double const head = alt_start == 0 ? 0.0 : partial[alt_start - 1];
            if (scheme.acceleration == ImproperScheme::Acceleration::euler)
            {
                auto const [tail_sum, last_term] = euler_alternating_sum(tail);
                double const estimate = head + tail_sum;
                bool const same_head = (euler_head == alt_start);
                double const change = same_head ? std::abs(estimate - prev_euler) : INFINITY;
                euler_head = alt_start;
                prev_euler = estimate;
                if (last_term < 0.25 * scheme.tolerance && change < 0.5 * scheme.tolerance)
                {
                    result.status = ImproperResult::Status::converged;
                    result.method = ImproperResult::Method::euler;
                    result.value = estimate;
                    result.achieved_tolerance = std::max(last_term, change);
                    result.windows_used = n;
                    return result;
                }
            }
            else if (std::abs(contrib.back()) < scheme.tolerance)
            {
                // alternating-series bound: error below the last term
                result.status = ImproperResult::Status::converged;
                result.method = ImproperResult::Method::cauchy;
                result.value = partial.back();
                result.achieved_tolerance = std::abs(contrib.back());
                result.windows_used = n;
                return result;
            }
            continue;
        }

        // (b) geometric decay of same-signed contributions
        bool geometric = true;
        double log_ratio = 0;
        for (std::size_t j = n - kRunLength; j + 1 < n; ++j)
        {
            double const a = contrib[j];
            double const b = contrib[j + 1];
            if (sign_of(a) == 0 || sign_of(a) != sign_of(b) || std::abs(b) >= kMaxGeometricRatio * std::abs(a))
            {
                geometric = false;
                break;
            }
            log_ratio += std::log(b / a);
        }
        if (geometric)
        {
            double const rho = std::exp(log_ratio / static_cast<double>(kRunLength - 1));
            double const estimate = partial.back() + contrib.back() * rho / (1 - rho);
            geometric_history.push_back(estimate);
            std::size_t const h = geometric_history.size();
            if (h >= 3)
            {
                double const d1 = std::abs(geometric_history[h - 1] - geometric_history[h - 2]);
                double const d2 = std::abs(geometric_history[h - 2] - geometric_history[h - 3]);
                if (d1 < 0.5 * scheme.tolerance && d2 < scheme.tolerance)
                {
                    result.status = ImproperResult::Status::converged;
                    result.method = ImproperResult::Method::geometric_tail;
                    result.value = estimate;
                    result.achieved_tolerance = std::max(d1, d2);
                    result.windows_used = n;
                    return result;
                }
            }
        }
        else
        {
            geometric_history.clear();
        }
    }

    result.status = ImproperResult::Status::non_convergent;
    result.windows_used = contrib.size();
    result.achieved_tolerance = contrib.empty() ? INFINITY : std::abs(contrib.back());
    result.note = "no sign alternation or Cauchy decay within max windows";
    return result;
}

}  // namespace poissinc
