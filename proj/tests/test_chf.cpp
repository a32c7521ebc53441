// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <complex>
#include <sstream>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "poissinc/chf.hpp"
#include "poissinc/errors.hpp"

using namespace poissinc;
using C = std::complex<double>;

TEST_CASE("degenerate and small samples")
{
    std::vector<double> const zeros(2000, 0.0);
    auto const e = empirical_chf(zeros, {0.5, 3});
    CHECK(e.value[0] == C{1, 0});
    CHECK(e.value[1] == C{1, 0});
    CHECK(e.se_real[0] == 0);
    CHECK(!e.wide_ci);
    std::vector<double> const few{1, 2, 3};
    CHECK(empirical_chf(few, {1}).wide_ci);
    std::vector<double> const one{1};
    CHECK_THROWS(empirical_chf(one, {1}));
}

TEST_CASE("normal samples")
{
    RngStream rng(StreamKey{1, 2, 3});
    std::vector<double> x(100000);
    for (auto& v : x)
        v = rng.normal();
    auto const e = empirical_chf(x, {1});
    CHECK(std::abs(e.value[0].real() - std::exp(-0.5)) < 4 * e.se_real[0]);
    CHECK(std::abs(e.value[0].imag()) < 4 * e.se_imag[0]);
    CHECK(std::abs(e.value[0]) <= 1);
}

TEST_CASE("Poisson counts against the analytic Nf")
{
    std::vector<double> const t{0.5, 1, 2};
    auto const ana = analytic_chf_Nf(SeriesFunction::indicator(0, 1), t);
    for (std::size_t i = 0; i < t.size(); ++i)
    {
        C const want = std::exp(std::exp(C{0, t[i]}) - 1.0);
        CHECK(std::abs(ana[i] - want) < 1e-10);
    }

    auto const spec = parse_distribution("exponential(rate=1)");
    std::vector<double> counts(10000);
    for (std::size_t r = 0; r < counts.size(); ++r)
    {
        ArrivalStream s(spec, StreamKey{5, 1, r});
        s.extend_past(1);
        counts[r] = static_cast<double>(s.count_up_to(1));
    }
    auto const cmp = compare(empirical_chf(counts, t), ana);
    CHECK(cmp.pass);
    for (double z : cmp.zscore)
        CHECK(z < 4);
}

TEST_CASE("comparison verdicts")
{
    RngStream rng(StreamKey{9, 2, 3});
    std::vector<double> x(5000);
    for (auto& v : x)
        v = rng.normal();
    auto const e = empirical_chf(x, {0.5, 1});
    auto const same = compare(e, e.value);
    CHECK(same.pass);
    CHECK(same.zscore == std::vector<double>{0, 0});

    auto shifted = e.value;
    shifted[1] += C{10 * e.se_real[1], 0};
    auto const off = compare(e, shifted);
    CHECK(!off.pass);
    CHECK(off.zscore[1] == doctest::Approx(10));

    std::ostringstream os;
    write_csv(off, os);
    CHECK(os.str().rfind("t,emp_re,emp_im,ci,ana_re,ana_im,zscore\n", 0) == 0);
}

TEST_CASE("analytic values for oscillating functions")
{
    auto const v = analytic_chf_Nf(SeriesFunction::sinc(), {0, 1});
    CHECK(v[0] == C{1, 0});
    CHECK(std::abs(v[1]) > 0);
    CHECK(std::abs(v[1]) < 1);
    // int (1 - cos sinc) = head on [0, X] + 1/(4X) + O(X^-2)
    double const X = 2000 * std::numbers::pi;
    double head = 0;
    for (int k = 0; k < 2000; ++k)
        head += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [](double u) { return 1 - std::cos(u == 0 ? 1.0 : std::sin(u) / u); }, k * std::numbers::pi,
            (k + 1) * std::numbers::pi, 5, 1e-11);
    CHECK(std::abs(-std::log(std::abs(v[1])) - (head + 1 / (4 * X))) < 1e-7);
    CHECK_THROWS_AS(analytic_chf_Nf(SeriesFunction::cis_over_x(), {1}), ParameterError);

    // unit Poisson model: Xf and Nf agree
    auto const x = analytic_chf_Xf(LevyModel::poisson_unit(), SeriesFunction::indicator(0, 1), {1});
    CHECK(std::abs(x[0] - std::exp(std::exp(C{0, 1}) - 1.0)) < 1e-10);
}

TEST_CASE("stable LePage sums with a uniform marker")
{
    auto const model = LevyModel::stable(0.5);
    auto const f = SeriesFunction::indicator(0, 1);
    auto const marker = parse_marker("uniform_unit");
    auto const spec = parse_distribution("exponential(rate=1)");
    std::size_t const terms = 2000;
    std::vector<double> x(10000);
    for (std::size_t r = 0; r < x.size(); ++r)
    {
        ArrivalStream s(spec, StreamKey{21, 1, r});
        s.extend(terms);
        x[r] = lepage_evaluate(model, marker, f, s, StreamKey{21, 2, r}, terms).value().real();
    }
    auto const ana = analytic_chf_Xf(model, f, {1});
    auto const [pr, pi] = model.psi(1);
    CHECK(std::abs(ana[0] - std::exp(C{-pr, pi})) < 1e-10);
    auto const cmp = compare(empirical_chf(x, {1}), ana, 3);
    CHECK(cmp.pass);
}
