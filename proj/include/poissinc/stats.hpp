// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "poissinc/rng.hpp"

namespace poissinc
{

struct MeanEstimate
{
    double mean = 0;
    double variance = 0;  // unbiased sample variance
    double stderr_mean = 0;
    std::size_t count = 0;

    //! Half-width of the symmetric band mean +/- k * stderr.
    double band(double k) const { return k * stderr_mean; }
};

MeanEstimate estimate_mean(std::span<double const> xs);

//! Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile(std::vector<double> xs, double prob);

struct Interval
{
    double lo = 0;
    double hi = 0;
};

//! Percentile bootstrap for a statistic of replicate indices.
//!
//! `statistic` receives a resampled index vector (with replacement) and
//! returns one value per output slot. Resamples are drawn from `stream`
//! serially, so the result is deterministic for a fixed stream key.
std::vector<Interval> bootstrap_percentile(
    std::size_t replicates, std::size_t resamples, RngStream stream, double level,
    std::size_t outputs,
    std::function<void(std::span<std::size_t const>, std::span<double>)> const& statistic);

}  // namespace poissinc
