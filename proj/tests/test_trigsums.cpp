// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "poissinc/errors.hpp"
#include "poissinc/trigsums.hpp"

using namespace poissinc;
using C = std::complex<double>;

TEST_CASE("first step of the decomposition")
{
    auto const s = ArrivalStream::from_arrivals({0.7});
    C const z{0.5, 0.5};
    auto const p = build_trig_path(s, 1, z);
    C const zeta = std::exp(C{0, 0.7});
    CHECK(std::abs(p.Z[1] - zeta) < 1e-15);
    CHECK(std::abs(p.M[1] - (zeta - z)) < 1e-15);
    CHECK(std::abs(p.A[1] - z) < 1e-15);
    CHECK(p.Z[0] == C{});
    CHECK_THROWS_AS(build_trig_path(s, 1, C{0, 1}), DegeneracyError);
}

TEST_CASE("pathwise identities at N = 1000")
{
    auto const spec = parse_distribution("gamma(shape=2,rate=3)");
    C const z = char_value(spec);
    ArrivalStream s(spec, StreamKey{1, 0, 0});
    s.extend(1000);
    auto const p = build_trig_path(s, 1000, z);
    for (std::size_t n = 1; n <= 1000; ++n)
    {
        REQUIRE(std::abs(std::abs(p.Z[n] - p.Z[n - 1]) - 1) < 1e-12);
        REQUIRE(std::abs(p.Z[n] - (p.M[n] + p.A[n])) < 1e-10);
        REQUIRE(std::abs(p.Z[n] - (p.shifted[n] + z * p.Z[n - 1])) < 1e-10);
        REQUIRE(std::abs(p.M[n] - p.M[n - 1]) <= 1 + std::abs(z) + 1e-12);
    }
    CHECK(std::abs(convolution_value(p, 1000) - p.Z[1000]) < 1e-8);
}

TEST_CASE("mean and second moment of Z")
{
    C const z{0.5, 0.5};
    CHECK(mean_of_Z(0, z) == C{});
    CHECK(std::abs(mean_of_Z(1, z) - z) < 1e-15);
    CHECK(std::abs(mean_of_Z(3, z) - (z + z * z + z * z * z)) < 1e-15);
    CHECK(second_moment_of_Z(1, z) == doctest::Approx(1));
    // z / (1 - z) = i, so E|Z_n|^2 - n -> 2 geometrically
    for (std::size_t n : {100u, 1000u, 10000u})
        CHECK(second_moment_of_Z(n, z) == doctest::Approx(static_cast<double>(n) + 2).epsilon(1e-12));

    // Monte Carlo mean at n = 50 over 1e5 paths
    auto const spec = parse_distribution("exponential(rate=1)");
    std::size_t const reps = 100000;
    C sum{};
    for (std::size_t r = 0; r < reps; ++r)
    {
        ArrivalStream s(spec, StreamKey{2, 0, r});
        s.extend(50);
        C zz{};
        for (double x : s.arrivals())
            zz += std::exp(C{0, x});
        sum += zz;
    }
    C const mc = sum / static_cast<double>(reps);
    C const exact = mean_of_Z(50, z);
    // per-path variance <= n per component
    double const band = 4 * std::sqrt(50.0 / static_cast<double>(reps));
    CHECK(std::abs(mc.real() - exact.real()) < band);
    CHECK(std::abs(mc.imag() - exact.imag()) < band);
}

TEST_CASE("norm growth for exponential increments")
{
    auto const spec = parse_distribution("exponential(rate=1)");
    auto const grid = dyadic_grid(7, 14);
    NormGrowthOptions opts;
    opts.resamples = 500;
    auto const moduli = sample_z_moduli(spec, grid, 1000, StreamKey{31, 0x7a, 0});
    auto const r2 = norm_growth_from_moduli(moduli, grid, 2, 1.0, 31, opts);
    CHECK(r2.slope >= 0.47);
    CHECK(r2.slope <= 0.53);
    auto const r1 = norm_growth_from_moduli(moduli, grid, 1, 1.0, 31, opts);
    CHECK(r1.slope <= 0.55);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        CHECK(r2.norm_ci[i].lo <= r2.norm[i]);
        CHECK(r2.norm_ci[i].hi >= r2.norm[i]);
    }
    auto const partial = lyons_partial_sums(r2);
    REQUIRE(partial.size() == grid.size());
    CHECK(partial.back() - partial[partial.size() - 2] < 1e-3);

    // worker count does not change the sample
    auto const again = sample_z_moduli(spec, grid, 1000, StreamKey{31, 0x7a, 0}, 4);
    CHECK(again == moduli);
}

TEST_CASE("strong law probe")
{
    auto const spec = parse_distribution("exponential(rate=1)");
    double worst = 0;
    for (std::uint64_t r = 0; r < 100; ++r)
    {
        ArrivalStream s(spec, StreamKey{8, 0, r});
        s.extend(100000);
        C zz{};
        for (double x : s.arrivals())
            zz += std::exp(C{0, x});
        worst = std::max(worst, std::abs(zz) / 1e5);
    }
    CHECK(worst < 0.02);
}
