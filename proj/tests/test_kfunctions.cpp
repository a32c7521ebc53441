// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "poissinc/errors.hpp"
#include "poissinc/kfunctions.hpp"

using namespace poissinc;
using std::numbers::pi;

namespace
{
KFunctionSet poisson_set(char const* marker, SeriesFunction f = SeriesFunction::sinc())
{
    return KFunctionSet{parse_marker(marker), LevyModel::poisson_unit(), std::move(f), 1.0};
}

bool close(double got, double want, double rel)
{
    return std::abs(got - want) <= rel * std::abs(want);
}

double const kExpS[] = {2, 10, 1e2, 1e3, 1e4, 1e5, 1e6, 1e8, 1e10, 1e12};
// high-precision quadrature of int_{ln s}^inf sinc(v) e^{-v} dv
double const kExpK[] = {0.296353326973833637551695003545,  0.00474555020695178526594683723291,
                        -0.00114622810226473462393832278314, 9.30931607522196174004481222926e-5,
                        -3.6431139729142988936657859893e-6, -1.77525019362240568909587227596e-7,
                        4.4860745048678852813232600434e-8,  1.21577014386436656857412926507e-10,
                        -2.92678777962406864030291356007e-12, -3.1315196022843529408949385693e-15};
}  // namespace

TEST_CASE("Pareto marker with the reduction")
{
    auto const set = poisson_set("pareto_tail(r=2,cutoff=1,unnormalized=1)");
    CHECK(reduction_lower_limit(set.marker, 100) == doctest::Approx(10));
    // int_a^inf sin v v^-3 dv = Im E_3(-ia) / a^2 and
    // int_a^inf sinc^2 v^-2 dv = (1/3 - Re E_4(-2ia)) / (2 a^3), at high precision
    auto const k100 = k_functions(set, 1e2);
    CHECK(k100.k1 == 0);
    CHECK(close(k100.k2.real(), -0.0008980482962807566301418418, 1e-9));
    CHECK(k100.k2.imag() == 0);
    CHECK(close(k100.k3, 0.0001865466337190275832398177, 1e-8));
    auto const k1e4 = k_functions(set, 1e4);
    CHECK(close(k1e4.k2.real(), 0.0000008461264627687913385882716, 1e-9));
    CHECK(close(k1e4.k3, 0.0000001644601727613754778060953, 1e-8));

    KOptions quad;
    quad.route = KRoute::quadrature;
    auto const q = k_functions(set, 1e2, quad);
    CHECK(close(q.k2.real(), k100.k2.real(), 1e-8));
    CHECK(close(q.k3, k100.k3, 1e-8));
}

TEST_CASE("exponential marker")
{
    auto const set = poisson_set("exponential_unit");
    for (std::size_t i = 0; i < 10; ++i)
    {
        INFO("s = " << kExpS[i]);
        CHECK(close(exponential_marker_k(kExpS[i]), kExpK[i], 1e-12));
        CHECK(close(k_functions(set, kExpS[i]).k2.real(), kExpK[i], 1e-8));
    }
    for (double s : {1e3, 1e4, 1e6, 1e9})
    {
        double const ratio = k_envelope(set, s) * s * std::log(s);
        INFO("s = " << s);
        CHECK(ratio > 0.5);
        CHECK(ratio < 2);
    }
    CHECK_THROWS_AS(exponential_marker_k(1), DomainError);
}

TEST_CASE("uniform marker has no reduction")
{
    auto const set = poisson_set("uniform_unit");
    KOptions red;
    red.route = KRoute::reduction;
    CHECK_THROWS_AS(k_functions(set, 0.5, red), UnsupportedError);
    // automatic routing falls back to quadrature: H(s) = 1{s <= 1}
    auto const k = k_functions(set, 0.5);
    CHECK(close(k.k2.real(), 0.946083070367183014941353313823, 1e-9));  // Si(1)
    CHECK(k_functions(set, 2).k2 == std::complex<double>{});
}

TEST_CASE("bounded f never exceeds the cut-off")
{
    for (double s : {0.5, 3.0, 1e3})
        CHECK(k_functions(poisson_set("exponential_unit"), s).k1 == 0);
}

TEST_CASE("three-series diagnostics")
{
    auto const p = three_series_check(poisson_set("exponential_unit"));
    REQUIRE(p.k1.kind == IntegralVerdict::Kind::finite);
    CHECK(*p.k1.value == 0);
    REQUIRE(p.k3.kind == IntegralVerdict::Kind::finite);
    CHECK(*p.k3.value == doctest::Approx(pi / 2).epsilon(1e-5));
    REQUIRE(p.k2_real.converged());
    CHECK(*p.k2_real.value == doctest::Approx(pi / 2).epsilon(1e-8));

    auto const z = three_series_check(poisson_set("exponential_unit", SeriesFunction::zero()));
    CHECK(*z.k1.value == 0);
    CHECK(*z.k3.value == 0);
    CHECK(*z.k2_real.value == 0);

    std::vector<double> grid;
    for (int e = 2; e <= 6; ++e)
        grid.push_back(std::pow(10.0, e));
    auto const r3 = three_series_check(poisson_set("pareto_tail(r=3,cutoff=1,unnormalized=1)"), grid);
    REQUIRE(r3.k2_envelope);
    CHECK(r3.k2_envelope->fit.slope == doctest::Approx(-4.0 / 3).epsilon(0.05));
    REQUIRE(r3.k2_envelope->abs_integral);
    CHECK(std::isfinite(*r3.k2_envelope->abs_integral));
}

TEST_CASE("amplitude bound")
{
    std::vector<double> const grid{1e2, 1e4};
    auto const one = amplitude_k_bound(named_amplitude("one"), 2, grid);
    auto const cis = poisson_set("pareto_tail(r=2,cutoff=1,unnormalized=1)", SeriesFunction::cis_over_x());
    for (auto const& row : one.rows)
    {
        auto const k = k_functions(cis, row.s).k2;
        CHECK(std::abs(row.direct - k) <= 1e-8 * std::abs(k));
    }

    auto const lg = amplitude_k_bound(named_amplitude("inv_log"), 2, grid);
    REQUIRE(lg.rows.size() == 2);
    CHECK(lg.l2_tail.kind == IntegralVerdict::Kind::finite);
    CHECK(lg.l1_derivative_tail.kind == IntegralVerdict::Kind::finite);
    // high-precision int_a^inf e^{ix} / (x^3 ln(x + 2)) dx at a = 10 and 100
    std::complex<double> const want[] = {{0.0001005116109984802844491539, -0.0003604975739167326331240099},
                                         {0.0000001153125192825670693473347, 0.0000001826873449503969303925085}};
    for (std::size_t i = 0; i < 2; ++i)
    {
        auto const& row = lg.rows[i];
        CHECK(std::abs(row.direct - want[i]) <= 1e-8 * std::abs(want[i]));
        auto const sum = row.quotient + row.first_integral + row.second_integral;
        CHECK(std::abs(sum - row.direct) <= 1e-8 * std::abs(row.direct));
        CHECK(row.mismatch <= 1e-8);
    }

    CHECK_THROWS_AS(amplitude_k_bound(named_amplitude("linear"), 2, grid), PreconditionError);
    CHECK_THROWS_AS(amplitude_k_bound(named_amplitude("one"), 1, grid), ParameterError);
}

TEST_CASE("sweep csv")
{
    std::ostringstream os;
    write_k_sweep_csv({10.0}, {KValues{0, {0.5, 0}, 0.25}}, os);
    CHECK(os.str() == "s,K1,K2_real,K2_imag,K3\n10,0,0.5,0,0.25\n");
}
