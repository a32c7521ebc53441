// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "poissinc/errors.hpp"
#include "poissinc/pointprocess.hpp"

using namespace poissinc;

TEST_CASE("deterministic increments give an arithmetic progression")
{
    ArrivalStream s(parse_distribution("deterministic(value=1)"), StreamKey{1, 1, 0});
    s.extend(5);
    std::vector<double> const got(s.arrivals().begin(), s.arrivals().end());
    CHECK(got == std::vector<double>{1, 2, 3, 4, 5});
    CHECK(s.at(3) == 3);
    CHECK(s.count_up_to(2.5) == 2);
}

TEST_CASE("prefix stability")
{
    auto const spec = parse_distribution("exponential(rate=1)");
    ArrivalStream base(spec, StreamKey{2, 1, 0});
    auto const twice = extend(extend(base, 100), 200);
    auto const once = extend(base, 200);
    REQUIRE(twice.size() == 200);
    CHECK(std::equal(twice.arrivals().begin(), twice.arrivals().end(), once.arrivals().begin()));
    CHECK(base.size() == 0);
}

TEST_CASE("arrivals match compensated prefix sums and grow")
{
    ArrivalStream s(parse_distribution("pareto(index=1.5,scale=0.1)"), StreamKey{3, 1, 0});
    s.extend(100000);
    long double acc = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
    {
        acc += s.increments()[i];
        REQUIRE(std::abs(static_cast<double>(acc) - s.arrivals()[i]) <= 4e-16 * s.arrivals()[i]);
        if (i > 0)
            REQUIRE(s.arrivals()[i] > s.arrivals()[i - 1]);
    }
}

TEST_CASE("law of large numbers for exponential arrivals")
{
    ArrivalStream s(parse_distribution("exponential(rate=1)"), StreamKey{4, 1, 0});
    s.extend(1000000);
    CHECK(std::abs(s.at(1000000) / 1e6 - 1) < 0.004);
}

TEST_CASE("extend_past and fixed paths")
{
    ArrivalStream s(parse_distribution("exponential(rate=1)"), StreamKey{5, 1, 0});
    s.extend_past(50);
    CHECK(s.arrivals().back() > 50);
    CHECK(s.count_up_to(50) < s.size());

    auto fixed = ArrivalStream::from_arrivals({1, 2, 3});
    CHECK_THROWS(fixed.extend(4));
    CHECK_THROWS(ArrivalStream::from_arrivals({2, 1}));
}

TEST_CASE("reciprocals")
{
    auto const s = ArrivalStream::from_arrivals({1, 2, 3});
    auto const r = reciprocals(s, 3);
    CHECK(r.r == std::vector<double>{1, 0.5, 1.0 / 3});
    REQUIRE(r.d.size() == 2);
    CHECK(r.d[0] == doctest::Approx(0.5));
    CHECK(r.d[1] == doctest::Approx(1.0 / 6));
    CHECK_THROWS_AS(reciprocals(ArrivalStream::from_arrivals({0, 1}), 2), DomainError);
    CHECK(reciprocal_moment_floor(1) == 5);
    CHECK(reciprocal_moment_floor(2.2) == 10);
}

TEST_CASE("reciprocal identities on generated paths")
{
    ArrivalStream s(parse_distribution("gamma(shape=0.5,rate=1)"), StreamKey{6, 1, 0});
    s.extend(20001);
    auto const r = reciprocals(s, 20001);
    for (std::size_t n = 0; n + 1 < r.r.size(); ++n)
    {
        double const x_next = s.increments()[n + 1];
        double const identity = x_next / (s.arrivals()[n] * s.arrivals()[n + 1]);
        REQUIRE(r.d[n] >= 0);
        // D_n is a difference, so its rounding error scales with R_n
        double const slack = 4e-16 * r.r[n];
        REQUIRE(std::abs(r.d[n] - identity) <= slack + 1e-12 * identity);
        REQUIRE(r.d[n] <= x_next * r.r[n] * r.r[n] + slack);
    }
}

TEST_CASE("Poisson counts on [0, 5]")
{
    auto const spec = parse_distribution("exponential(rate=1)");
    int const reps = 100000;
    double m = 0, m2 = 0;
    for (int i = 0; i < reps; ++i)
    {
        ArrivalStream s(spec, StreamKey{7, 1, static_cast<std::uint64_t>(i)});
        s.extend_past(5);
        double const c = static_cast<double>(s.count_up_to(5));
        m += c;
        m2 += c * c;
    }
    m /= reps;
    double const var = m2 / reps - m * m;
    CHECK(std::abs(m - 5) < 0.07);
    CHECK(std::abs(var - 5) < 0.07);
}

TEST_CASE("csv dump")
{
    auto const s = ArrivalStream::from_arrivals({0.5, 1.5});
    std::ostringstream os;
    s.write_csv(os);
    CHECK(os.str() == "n,S_n\n1,0.5\n2,1.5\n");
}
