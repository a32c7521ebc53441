// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "doctest.h"
#include "poissinc/rng.hpp"

using namespace poissinc;

// Known-answer vectors published with the Random123 reference implementation.
TEST_CASE("philox4x32-10 known answers")
{
    using C = Philox4x32::Counter;
    using K = Philox4x32::Key;
    CHECK(Philox4x32::apply(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::apply(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::apply(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and keyed")
{
    StreamKey const key{42, 7, 3};
    RngStream a(key), b(key);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.next_u64() == b.next_u64());
    CHECK(a.position() == 1000);

    RngStream other_rep(StreamKey{42, 7, 4});
    RngStream other_exp(StreamKey{42, 8, 3});
    RngStream lane(key.lane(1));
    RngStream fresh(key);
    auto const first = fresh.next_u64();
    CHECK(other_rep.next_u64() != first);
    CHECK(other_exp.next_u64() != first);
    CHECK(lane.next_u64() != first);
    CHECK(key.lane(1).experiment != key.lane(2).experiment);
}

TEST_CASE("uniform stays in the open unit interval")
{
    RngStream s(StreamKey{1, 2, 3});
    double lo = 1, hi = 0, sum = 0;
    int const n = 200000;
    for (int i = 0; i < n; ++i)
    {
        double const u = s.uniform();
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        sum += u;
    }
    CHECK(lo > 0);
    CHECK(hi < 1);
    // mean 1/2, sd of the mean sqrt(1/12/n)
    CHECK(std::abs(sum / n - 0.5) < 4 * std::sqrt(1.0 / 12 / n));
}

TEST_CASE("below is in range and hits every value")
{
    RngStream s(StreamKey{9, 9, 9});
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i)
    {
        auto const v = s.below(7);
        REQUIRE(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("normal draws have unit variance")
{
    RngStream s(StreamKey{5, 0, 0});
    int const n = 200000;
    double m = 0, m2 = 0;
    for (int i = 0; i < n; ++i)
    {
        double const x = s.normal();
        m += x;
        m2 += x * x;
    }
    m /= n;
    m2 /= n;
    CHECK(std::abs(m) < 4 / std::sqrt(n));
    CHECK(std::abs(m2 - 1) < 4 * std::sqrt(2.0 / n));
}
