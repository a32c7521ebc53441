// SPDX-License-Identifier: Apache-2.0
#include "poissinc/numeric.hpp"

#include <string>

namespace poissinc
{

LinearFit fit_line(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw ParameterError("fit_line needs at least two paired points");
    double const n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0)
        throw ParameterError("fit_line: abscissae are all equal");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        double const r = y[i] - fit.intercept - fit.slope * x[i];
        rss += r * r;
    }
    fit.residual_rms = std::sqrt(rss / n);
    fit.slope_stderr = x.size() > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
    return fit;
}

LinearFit fit_loglog(std::span<double const> x, std::span<double const> y)
{
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (!(x[i] > 0) || !(y[i] > 0))
            throw DomainError("fit_loglog: non-positive value at index " + std::to_string(i));
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    return fit_line(lx, ly);
}

std::vector<double> geometric_grid(double lo, double hi, std::size_t n)
{
    if (n < 2 || !(lo > 0) || !(hi > lo))
        throw ParameterError("geometric_grid needs 0 < lo < hi and n >= 2");
    std::vector<double> out(n);
    double const step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo * std::exp(step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

std::vector<std::size_t> dyadic_grid(unsigned lo_exp, unsigned hi_exp)
{
    if (hi_exp < lo_exp || hi_exp > 62)
        throw ParameterError("dyadic_grid: bad exponent range");
    std::vector<std::size_t> out;
    for (unsigned e = lo_exp; e <= hi_exp; ++e)
        out.push_back(std::size_t{1} << e);
    return out;
}

}  // namespace poissinc
