// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "poissinc/distributions.hpp"
#include "poissinc/pointprocess.hpp"
#include "poissinc/stats.hpp"

namespace poissinc
{

//! Exponential sums Z_n = sum_{k<=n} exp(i S_k) with their Doob parts.
//!
//! All vectors have length N + 1 and start at index 0 with Z_0 = M_0 = A_0 = 0.
//! The compensator uses E[dZ_n | F_{n-1}] = z exp(i S_{n-1}) with S_0 = 0,
//! so M_1 = exp(i S_1) - z, A_1 = z and Z_n = M_n + A_n.
//!
//! `shifted` is the martingale Mt_n = M_n + z (n >= 1), Mt_0 = 0, which
//! satisfies the recursion Z_n = Mt_n + z Z_{n-1} and hence the
//! convolution Z_N = sum_{k=0}^N z^(N-k) Mt_k.
struct TrigSumPath
{
    std::complex<double> z;
    std::vector<std::complex<double>> Z;
    std::vector<std::complex<double>> M;
    std::vector<std::complex<double>> A;
    std::vector<std::complex<double>> shifted;

    std::size_t length() const noexcept { return Z.empty() ? 0 : Z.size() - 1; }
};

//! Requires arrivals realized to N and |z| < 1.
TrigSumPath build_trig_path(ArrivalStream const& arrivals, std::size_t n, std::complex<double> z);

//! sum_{k=0}^N z^(N-k) Mt_k evaluated by Horner's rule.
std::complex<double> convolution_value(TrigSumPath const& path, std::size_t n);

//! z_n = E Z_n = z (1 - z^n) / (1 - z).
std::complex<double> mean_of_Z(std::size_t n, std::complex<double> z);

//! E|Z_n|^2 from the recursion E|Z_k|^2 = 1 + 2 Re z_{k-1} + E|Z_{k-1}|^2.
double second_moment_of_Z(std::size_t n, std::complex<double> z);

//! |Z_n| at each grid point for independent replicate paths.
//!
//! Row r holds replicate r, drawn from StreamKey{seed, experiment, r}.
//! Rows are computed in parallel and stored by index.
std::vector<std::vector<double>> sample_z_moduli(DistributionSpec const& spec,
                                                 std::vector<std::size_t> const& grid,
                                                 std::size_t replicates, StreamKey base,
                                                 unsigned workers = 1);

struct NormGrowthReport
{
    double p = 2;
    std::vector<std::size_t> grid;
    std::vector<double> norm;  // (E|Z_n|^p)^(1/p)
    std::vector<Interval> norm_ci;
    double slope = 0;
    Interval slope_ci;
    double cz = 0;
    std::size_t replicates = 0;
    bool ci_too_wide = false;
};

struct NormGrowthOptions
{
    std::size_t resamples = 2000;
    double level = 0.95;
    unsigned workers = 1;
    std::uint64_t experiment = 0x7a;
    //! Relative CI half-width above which the report is flagged.
    double max_relative_halfwidth = 0.1;
};

//! Monte Carlo estimate of ||Z_n||_p on a strictly increasing grid with
//! percentile-bootstrap CIs and the OLS slope of log norm against log n.
NormGrowthReport estimate_norm_growth(DistributionSpec const& spec, double p,
                                      std::vector<std::size_t> const& grid,
                                      std::size_t replicates, std::uint64_t seed,
                                      NormGrowthOptions const& opts = {});

//! Same estimate from precomputed moduli (shared paths across several p).
NormGrowthReport norm_growth_from_moduli(std::vector<std::vector<double>> const& moduli,
                                         std::vector<std::size_t> const& grid, double p,
                                         double cz, std::uint64_t seed,
                                         NormGrowthOptions const& opts = {});

//! CSV: p,n,norm_est,ci_lo,ci_hi then a footer record with the slope.
void write_csv(NormGrowthReport const& report, std::ostream& os);

//! Partial sums of sum_N E|Z_N|^2 / N^3 over the grid points of a p = 2 report.
std::vector<double> lyons_partial_sums(NormGrowthReport const& report);

}  // namespace poissinc
