// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include "doctest.h"
#include "poissinc/distributions.hpp"
#include "poissinc/errors.hpp"

using namespace poissinc;
using C = std::complex<double>;

namespace
{
double sample_mean(std::vector<double> const& xs)
{
    double s = 0;
    for (double x : xs)
        s += x;
    return s / static_cast<double>(xs.size());
}
}  // namespace

TEST_CASE("parameter validation")
{
    CHECK_THROWS_AS(parse_distribution("pareto(index=1,scale=1)"), ParameterError);
    CHECK_THROWS_AS(parse_distribution("exponential(rate=0)"), ParameterError);
    CHECK_THROWS_AS(parse_distribution("uniform(lo=2,hi=1)"), ParameterError);
    CHECK_THROWS_AS(parse_distribution("uniform(lo=-1,hi=1)"), ParameterError);
    CHECK_THROWS_AS(parse_distribution("cauchy"), ParameterError);
    CHECK_THROWS_AS(parse_marker("pareto(r=1)"), ParameterError);
    CHECK(parse_distribution("deterministic(value=pi/2)").to_string() == "deterministic(value=1.5707963267948966)");
}

TEST_CASE("sampling examples")
{
    RngStream s(StreamKey{11, 1, 0});
    auto const ones = sample(parse_distribution("deterministic(value=1)"), 3, s);
    CHECK(ones == std::vector<double>{1, 1, 1});
    CHECK_THROWS_AS(sample(parse_distribution("exponential(rate=1)"), 0, s), ParameterError);

    std::size_t const n = 1000000;
    RngStream e(StreamKey{11, 2, 0});
    // mean 1, variance 1
    CHECK(std::abs(sample_mean(sample(parse_distribution("exponential(rate=1)"), n, e)) - 1) < 0.004);

    // Pareto(3, 1): mean 3/2, variance 3/4
    RngStream p(StreamKey{11, 3, 0});
    auto const xs = sample(parse_distribution("pareto(index=3,scale=1)"), n, p);
    CHECK(std::abs(sample_mean(xs) - 1.5) < 3 * std::sqrt(0.75 / static_cast<double>(n)));
    CHECK(*std::min_element(xs.begin(), xs.end()) >= 1);

    // Gamma(2, 1): mean 2
    RngStream g(StreamKey{11, 4, 0});
    CHECK(std::abs(sample_mean(sample(parse_distribution("gamma(shape=2,rate=1)"), n, g)) - 2) <
          4 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("sampling is deterministic per stream key")
{
    auto const spec = parse_distribution("gamma(shape=0.5,rate=3)");
    RngStream a(StreamKey{3, 3, 3}), b(StreamKey{3, 3, 3});
    CHECK(sample(spec, 1000, a) == sample(spec, 1000, b));
}

TEST_CASE("moments")
{
    CHECK(parse_distribution("pareto(index=3,scale=2)").mean() == doctest::Approx(3.0));
    CHECK(std::isinf(parse_distribution("pareto(index=1.5,scale=1)").variance()));
    CHECK(parse_distribution("gamma(shape=2,rate=4)").variance() == doctest::Approx(0.125));
    CHECK(parse_distribution("uniform(lo=1,hi=3)").mean() == 2);
}

TEST_CASE("characteristic values")
{
    CHECK(std::abs(char_value(parse_distribution("exponential(rate=1)")) - C{0.5, 0.5}) < 1e-15);
    // Gamma(2, 1): (1 - i)^-2 = i/2
    CHECK(std::abs(char_value(parse_distribution("gamma(shape=2,rate=1)")) - C{0, 0.5}) < 1e-15);
    auto const det = char_value(parse_distribution("deterministic(value=pi)"));
    CHECK(std::abs(det - C{-1, 0}) < 1e-15);
    CHECK(std::abs(det) == doctest::Approx(1));

    // Pareto(3, 1): e^{i} int_0^inf 3 (t+1)^-4 e^{it} dt by Boost's Ooura transforms
    boost::math::quadrature::ooura_fourier_cos<double> cos_t;
    boost::math::quadrature::ooura_fourier_sin<double> sin_t;
    auto g = [](double t) { return 3 / std::pow(t + 1, 4); };
    C const tail{cos_t.integrate(g, 1.0).first, sin_t.integrate(g, 1.0).first};
    C const oracle = std::exp(C{0, 1}) * tail;
    CHECK(std::abs(char_value(parse_distribution("pareto(index=3,scale=1)")) - oracle) < 1e-10);

    // quadrature route agrees with the closed forms
    for (auto const* s : {"exponential(rate=0.7)", "gamma(shape=1.5,rate=2)", "uniform(lo=0.5,hi=4)"})
    {
        auto const spec = parse_distribution(s);
        CHECK(std::abs(char_value_by_quadrature(spec) - char_value(spec)) < 1e-10);
    }
}

TEST_CASE("c_z constant")
{
    CHECK(cz_constant(parse_distribution("exponential(rate=1)")) == doctest::Approx(1).epsilon(1e-14));
    CHECK(cz_constant(C{0, 0}) == 1);
    CHECK_THROWS_AS(cz_constant(parse_distribution("deterministic(value=pi/2)")), DegeneracyError);
    CHECK_THROWS_AS(cz_constant(C{0, 1}), DegeneracyError);

    for (auto const* s : {"exponential(rate=0.3)", "exponential(rate=5)", "pareto(index=2.5,scale=0.5)",
                          "gamma(shape=3,rate=1)", "uniform(lo=0,hi=10)"})
    {
        CAPTURE(s);
        auto const spec = parse_distribution(s);
        C const z = char_value(spec);
        CHECK(std::abs(z) < 1 - 1e-9);
        double const cz = cz_constant(spec);
        CHECK(cz > 0);
        CHECK(cz == doctest::Approx((1 - std::norm(z)) / std::norm(1.0 - z)).epsilon(1e-12));
    }
}

TEST_CASE("marker densities")
{
    auto const pareto = parse_marker("pareto(r=2.5,cutoff=2)");
    auto const expo = parse_marker("exponential");

    // normalization by Boost exp-sinh quadrature
    boost::math::quadrature::exp_sinh<double> es;
    CHECK(es.integrate([&](double t) { return pareto.density(2 + t); }, 1e-14) == doctest::Approx(1).epsilon(1e-10));
    CHECK(es.integrate([&](double t) { return expo.density(t); }, 1e-14) == doctest::Approx(1).epsilon(1e-10));

    for (int i = 0; i < 100; ++i)
    {
        double const x = 2 * std::pow(1.1, i);
        REQUIRE(pareto.inverse(pareto.density(x)) == doctest::Approx(x).epsilon(1e-12));
        double const v = 0.05 * (i + 1);
        REQUIRE(expo.inverse(expo.density(v)) == doctest::Approx(v).epsilon(1e-12));
    }
    CHECK_THROWS_AS(parse_marker("uniform").inverse(0.5), UnsupportedError);

    auto const unnorm = parse_marker("pareto(r=3,unnormalized=1)");
    CHECK(unnorm.density(2) == doctest::Approx(0.125));
    CHECK(unnorm.inverse(1e-6) == doctest::Approx(100).epsilon(1e-12));
}

TEST_CASE("marker sampling")
{
    RngStream s(StreamKey{21, 0, 0});
    auto const v = marker_sample(parse_marker("pareto(r=3,cutoff=1)"), 100000, s);
    CHECK(*std::min_element(v.begin(), v.end()) >= 1);

    // Pareto(r=2, x0=1): V = (1-u)^-1, so P(V > 4) = 1/4
    RngStream s2(StreamKey{21, 1, 0});
    auto const w = marker_sample(parse_marker("pareto(r=2,cutoff=1)"), 100000, s2);
    double const frac = static_cast<double>(std::count_if(w.begin(), w.end(), [](double x) { return x > 4; })) / 1e5;
    CHECK(std::abs(frac - 0.25) < 4 * std::sqrt(0.25 * 0.75 / 1e5));

    RngStream s3(StreamKey{21, 2, 0});
    std::size_t const n = 1000000;
    auto const e = marker_sample(parse_marker("exponential"), n, s3);
    CHECK(std::abs(sample_mean(e) - 1) < 3 / std::sqrt(static_cast<double>(n)));
}
