// Copyright 2026 The statewalk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "statewalk/parallel.hpp"
#include "statewalk/random.hpp"

using namespace statewalk;

TEST_CASE("philox known answers")
{
    auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
    CHECK(zero[0] == 0x6627e8d5u);
    CHECK(zero[1] == 0xe169c58du);
    CHECK(zero[2] == 0xbc57ac4cu);
    CHECK(zero[3] == 0x9b00dbd8u);

    auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                           {0xffffffffu, 0xffffffffu});
    CHECK(ones[0] == 0x408f276du);
    CHECK(ones[1] == 0x41c83b0eu);
    CHECK(ones[2] == 0xa20bc7c6u);
    CHECK(ones[3] == 0x6d5451fdu);

    auto pi = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                         {0xa4093822u, 0x299f31d0u});
    CHECK(pi[0] == 0xd16cfe09u);
    CHECK(pi[1] == 0x94fdccebu);
    CHECK(pi[2] == 0x5001e420u);
    CHECK(pi[3] == 0x24126ea1u);
}

TEST_CASE("same seed and index give the same stream")
{
    RandomStream a = split_rng(42, 7);
    RandomStream b = split_rng(42, 7);
    for (int i = 0; i < 1000; ++i)
        REQUIRE(a.next_u64() == b.next_u64());
    CHECK(split_rng(42, 7).path() == RandomStream(42).split(7).path());
}

TEST_CASE("distinct indices are uncorrelated")
{
    const int n = 1000000;
    RandomStream a = split_rng(2026, 0);
    RandomStream b = split_rng(2026, 1);
    double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
    for (int i = 0; i < n; ++i)
    {
        double x = a.uniform(), y = b.uniform();
        sa += x;
        sb += y;
        sab += x * y;
        saa += x * x;
        sbb += y * y;
    }
    double cov = sab / n - (sa / n) * (sb / n);
    double corr = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
    CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("child paths do not collide")
{
    std::set<std::uint64_t> paths;
    RandomStream root(1);
    for (std::uint64_t i = 0; i < 10000; ++i)
        paths.insert(root.split(i).path());
    CHECK(paths.size() == 10000);
    CHECK(root.split(3).split(4).path() != root.split(4).split(3).path());
}

TEST_CASE("uniform and normal moments")
{
    RandomStream rng(99);
    const int n = 200000;
    double mu = 0, m2 = 0, nmean = 0, nvar = 0, n4 = 0;
    for (int i = 0; i < n; ++i)
    {
        double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        mu += u;
        m2 += u * u;
        double z = rng.normal();
        nmean += z;
        nvar += z * z;
        n4 += z * z * z * z;
    }
    CHECK(mu / n == doctest::Approx(0.5).epsilon(0.01));
    CHECK(m2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
    CHECK(std::abs(nmean / n) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(nvar / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(n4 / n == doctest::Approx(3.0).epsilon(0.05));
    CHECK(RandomStream(5).uniform_positive() > 0.0);
}

TEST_CASE("trial results do not depend on the lane count")
{
    auto draw = [](std::size_t t) { return split_rng(11, t).normal(); };
    auto one = run_trials<double>(257, draw, 1);
    auto four = run_trials<double>(257, draw, 4);
    CHECK(one == four);
}

TEST_CASE("trial exceptions propagate")
{
    auto bad = [](std::size_t t) -> int {
        if (t == 5)
            throw std::runtime_error("trial failed");
        return static_cast<int>(t);
    };
    CHECK_THROWS_AS(run_trials<int>(10, bad, 3), std::runtime_error);
}
