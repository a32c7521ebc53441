// SPDX-License-Identifier: Apache-2.0
#include "poissinc/stats.hpp"

#include <algorithm>
#include <cmath>

#include "poissinc/errors.hpp"
#include "poissinc/numeric.hpp"

namespace poissinc
{

MeanEstimate estimate_mean(std::span<double const> xs)
{
    MeanEstimate est;
    est.count = xs.size();
    if (xs.empty())
        return est;
    CompensatedSum sum;
    for (double x : xs)
        sum += x;
    est.mean = sum.value() / static_cast<double>(xs.size());
    if (xs.size() > 1)
    {
        CompensatedSum ss;
        for (double x : xs)
            ss += (x - est.mean) * (x - est.mean);
        est.variance = ss.value() / static_cast<double>(xs.size() - 1);
        est.stderr_mean = std::sqrt(est.variance / static_cast<double>(xs.size()));
    }
    return est;
}

double quantile(std::vector<double> xs, double prob)
{
    if (xs.empty())
        throw ParameterError("quantile of empty sample");
    if (!(prob >= 0 && prob <= 1))
        throw ParameterError("quantile probability outside [0, 1]");
    std::sort(xs.begin(), xs.end());
    double const h = prob * static_cast<double>(xs.size() - 1);
    auto const lo = static_cast<std::size_t>(std::floor(h));
    auto const hi = std::min(lo + 1, xs.size() - 1);
    return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

std::vector<Interval> bootstrap_percentile(
    std::size_t replicates, std::size_t resamples, RngStream stream, double level,
    std::size_t outputs,
    std::function<void(std::span<std::size_t const>, std::span<double>)> const& statistic)
{
    if (replicates == 0 || resamples < 2)
        throw ParameterError("bootstrap needs replicates > 0 and resamples >= 2");
    std::vector<std::vector<double>> draws(outputs, std::vector<double>(resamples));
    std::vector<std::size_t> idx(replicates);
    std::vector<double> values(outputs);
    for (std::size_t b = 0; b < resamples; ++b)
    {
        for (auto& i : idx)
            i = static_cast<std::size_t>(stream.below(replicates));
        statistic(idx, values);
        for (std::size_t k = 0; k < outputs; ++k)
            draws[k][b] = values[k];
    }
    double const alpha = 0.5 * (1.0 - level);
    std::vector<Interval> out(outputs);
    for (std::size_t k = 0; k < outputs; ++k)
        out[k] = {quantile(draws[k], alpha), quantile(draws[k], 1.0 - alpha)};
    return out;
}

}  // namespace poissinc
