// SPDX-License-Identifier: Apache-2.0
#include "poissinc/trigsums.hpp"

#include <cmath>
#include <ostream>

#include "poissinc/errors.hpp"
#include "poissinc/numeric.hpp"
#include "poissinc/parallel.hpp"

namespace poissinc
{

TrigSumPath build_trig_path(ArrivalStream const& arrivals, std::size_t n, std::complex<double> z)
{
    if (!(std::abs(z) < 1.0 - kDegeneracyMargin))
        throw DegeneracyError("build_trig_path: |z| = 1");
    if (arrivals.size() < n)
        throw ExtensionRequired("build_trig_path: arrivals realized to " +
                                    std::to_string(arrivals.size()),
                                0.0);
    TrigSumPath path;
    path.z = z;
    path.Z.assign(n + 1, {});
    path.M.assign(n + 1, {});
    path.A.assign(n + 1, {});
    path.shifted.assign(n + 1, {});

    auto const s = arrivals.arrivals();
    ComplexCompensatedSum zsum, msum, asum;
    std::complex<double> prev_zeta{1.0, 0.0};  // exp(i S_0)
    for (std::size_t k = 1; k <= n; ++k)
    {
        std::complex<double> const zeta{std::cos(s[k - 1]), std::sin(s[k - 1])};
        std::complex<double> const predicted = z * prev_zeta;
        zsum += zeta;
        msum += zeta - predicted;
        asum += predicted;
        path.Z[k] = zsum.value();
        path.M[k] = msum.value();
        path.A[k] = asum.value();
        path.shifted[k] = path.M[k] + z;
        prev_zeta = zeta;
    }
    return path;
}

std::complex<double> convolution_value(TrigSumPath const& path, std::size_t n)
{
    if (n >= path.Z.size())
        throw std::out_of_range("convolution_value: n beyond path length");
    std::complex<double> acc{};
    for (std::size_t k = 0; k <= n; ++k)
        acc = acc * path.z + path.shifted[k];
    return acc;
}

std::complex<double> mean_of_Z(std::size_t n, std::complex<double> z)
{
    if (n == 0)
        return {};
    if (!(std::abs(z) < 1.0))
        throw DegeneracyError("mean_of_Z: |z| must be below 1");
    return z * (1.0 - std::pow(z, static_cast<double>(n))) / (1.0 - z);
}

double second_moment_of_Z(std::size_t n, std::complex<double> z)
{
    CompensatedSum acc;
    std::complex<double> zk{};  // z_{k-1}
    std::complex<double> zpow = z;
    for (std::size_t k = 1; k <= n; ++k)
    {
        acc += 1.0 + 2.0 * zk.real();
        zk += zpow;  // z_k = z_{k-1} + z^k
        zpow *= z;
    }
    return acc.value();
}

std::vector<std::vector<double>> sample_z_moduli(DistributionSpec const& spec,
                                                 std::vector<std::size_t> const& grid,
                                                 std::size_t replicates, StreamKey base,
                                                 unsigned workers)
{
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        if (grid[i] == 0 || (i > 0 && grid[i] <= grid[i - 1]))
            throw ParameterError("grid must be strictly increasing and positive");
    }
    std::vector<std::vector<double>> out(replicates, std::vector<double>(grid.size()));
    if (grid.empty())
        return out;
    std::size_t const nmax = grid.back();
    parallel_for(replicates, workers, [&](std::size_t r) {
        StreamKey key = base;
        key.replicate = r;
        RngStream rng(key);
        CompensatedSum s;
        double re = 0, im = 0;
        std::size_t g = 0;
        for (std::size_t k = 1; k <= nmax; ++k)
        {
            s += sample_one(spec, rng);
            double const sk = s.value();
            re += std::cos(sk);
            im += std::sin(sk);
            if (k == grid[g])
            {
                out[r][g] = std::hypot(re, im);
                ++g;
            }
        }
    });
    return out;
}

NormGrowthReport norm_growth_from_moduli(std::vector<std::vector<double>> const& moduli,
                                         std::vector<std::size_t> const& grid, double p,
                                         double cz, std::uint64_t seed,
                                         NormGrowthOptions const& opts)
{
    if (!(p > 0))
        throw ParameterError("norm growth: p must be positive");
    if (grid.size() < 2)
        throw ParameterError("norm growth: grid needs at least two points");
    std::size_t const reps = moduli.size();
    if (reps < 2)
        throw ParameterError("norm growth: need at least two replicates");
    std::size_t const ng = grid.size();

    // powered[r][g] = |Z_n|^p
    std::vector<std::vector<double>> powered(reps, std::vector<double>(ng));
    for (std::size_t r = 0; r < reps; ++r)
        for (std::size_t g = 0; g < ng; ++g)
            powered[r][g] = std::pow(moduli[r][g], p);

    std::vector<double> xs(ng);
    for (std::size_t g = 0; g < ng; ++g)
        xs[g] = static_cast<double>(grid[g]);

    auto norms_of = [&](std::span<std::size_t const> idx, std::span<double> out) {
        for (std::size_t g = 0; g < ng; ++g)
        {
            CompensatedSum acc;
            for (std::size_t r : idx)
                acc += powered[r][g];
            out[g] = std::pow(acc.value() / static_cast<double>(idx.size()), 1.0 / p);
        }
    };

    NormGrowthReport rep;
    rep.p = p;
    rep.grid = grid;
    rep.cz = cz;
    rep.replicates = reps;
    rep.norm.resize(ng);
    std::vector<std::size_t> all(reps);
    for (std::size_t r = 0; r < reps; ++r)
        all[r] = r;
    norms_of(all, rep.norm);
    rep.slope = fit_loglog(xs, rep.norm).slope;

    RngStream boot(StreamKey{seed, opts.experiment ^ 0xb007, static_cast<std::uint64_t>(p * 1000)});
    auto const cis = bootstrap_percentile(
        reps, opts.resamples, boot, opts.level, ng + 1,
        [&](std::span<std::size_t const> idx, std::span<double> out) {
            norms_of(idx, out.first(ng));
            out[ng] = fit_loglog(xs, out.first(ng)).slope;
        });
    rep.norm_ci.assign(cis.begin(), cis.begin() + static_cast<std::ptrdiff_t>(ng));
    rep.slope_ci = cis[ng];

    rep.ci_too_wide = reps < 1000;
    for (std::size_t g = 0; g < ng; ++g)
    {
        double const half = 0.5 * (rep.norm_ci[g].hi - rep.norm_ci[g].lo);
        if (!std::isfinite(half) || half > opts.max_relative_halfwidth * rep.norm[g])
            rep.ci_too_wide = true;
    }
    return rep;
}

NormGrowthReport estimate_norm_growth(DistributionSpec const& spec, double p,
                                      std::vector<std::size_t> const& grid,
                                      std::size_t replicates, std::uint64_t seed,
                                      NormGrowthOptions const& opts)
{
    double const cz = cz_constant(spec);
    auto const moduli =
        sample_z_moduli(spec, grid, replicates, StreamKey{seed, opts.experiment, 0}, opts.workers);
    return norm_growth_from_moduli(moduli, grid, p, cz, seed, opts);
}

void write_csv(NormGrowthReport const& report, std::ostream& os)
{
    os << "p,n,norm_est,ci_lo,ci_hi\n";
    for (std::size_t g = 0; g < report.grid.size(); ++g)
    {
        os << format_number(report.p) << ',' << report.grid[g] << ','
           << format_number(report.norm[g]) << ',' << format_number(report.norm_ci[g].lo) << ','
           << format_number(report.norm_ci[g].hi) << '\n';
    }
    os << "# slope," << format_number(report.slope) << ',' << format_number(report.slope_ci.lo)
       << ',' << format_number(report.slope_ci.hi) << ",cz=" << format_number(report.cz)
       << ",ci_too_wide=" << (report.ci_too_wide ? 1 : 0) << '\n';
}

std::vector<double> lyons_partial_sums(NormGrowthReport const& report)
{
    if (report.p != 2)
        throw ParameterError("lyons_partial_sums needs a p = 2 report");
    std::vector<double> out;
    CompensatedSum acc;
    for (std::size_t g = 0; g < report.grid.size(); ++g)
    {
        double const n = static_cast<double>(report.grid[g]);
        acc += report.norm[g] * report.norm[g] / (n * n * n);
        out.push_back(acc.value());
    }
    return out;
}

}  // namespace poissinc
