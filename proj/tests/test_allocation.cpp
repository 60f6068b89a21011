// noma-sim: system-level simulator for large-scale power-domain NOMA
// Copyright (C) 2026 The noma-sim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "noma/allocation.hpp"
#include "noma/cluster.hpp"

using noma::GapMode;
using noma::PowerAllocation;
using noma::SicConstraint;

namespace
{

std::vector<double> random_gammas(std::mt19937_64& rng, std::size_t m)
{
    std::exponential_distribution<double> fading(1.0);
    std::vector<double> g(m);
    for (double& v : g)
        v = 20.0 * fading(rng);
    return g;
}

} // namespace

TEST_CASE("geometric fractions: hand-derived instances")
{
    CHECK(noma::geometric_fractions(1, 3.0) == std::vector<double>{1.0});
    CHECK(noma::geometric_fractions(1, 1.5) == std::vector<double>{1.0});

    const auto two = noma::geometric_fractions(2, 4.0);
    REQUIRE(two.size() == 2);
    CHECK(two[0] == doctest::Approx(3.0 / 15.0).epsilon(1e-15));
    CHECK(two[1] == doctest::Approx(0.8).epsilon(1e-15));

    const auto three = noma::geometric_fractions(3, 2.0);
    REQUIRE(three.size() == 3);
    CHECK(three[0] == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
    CHECK(three[1] == doctest::Approx(2.0 / 7.0).epsilon(1e-15));
    CHECK(three[2] == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("geometric fractions sum to one and strictly increase")
{
    for (std::size_t m = 1; m <= 64; ++m)
        for (double r : {1.0001, 1.1, 1.5, 2.0, 3.0, 4.0, 10.0, 16.0})
        {
            CAPTURE(m);
            CAPTURE(r);
            const auto f = noma::geometric_fractions(m, r);
            REQUIRE(f.size() == m);
            double sum = 0.0;
            for (double v : f)
                sum += v;
            CHECK(std::abs(sum - 1.0) <= 2.0 * std::numeric_limits<double>::epsilon());
            for (std::size_t i = 1; i < m; ++i)
                CHECK(f[i - 1] < f[i]);
            // Ratio between neighbours.
            for (std::size_t i = 1; i + 1 < m; ++i)
                CHECK(f[i] / f[i - 1] == doctest::Approx(r).epsilon(1e-9));
        }
}

TEST_CASE("geometric fractions reject a bad ratio or size")
{
    CHECK_THROWS_AS(noma::geometric_fractions(3, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(noma::geometric_fractions(3, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(noma::geometric_fractions(0, 2.0), std::invalid_argument);
}

TEST_CASE("power allocation invariants")
{
    const PowerAllocation a({0.2, 0.8}, 5.0);
    CHECK(a.power(0) == 1.0);
    CHECK(a.power(1) == 4.0);
    CHECK(a.with_budget(10.0).power(1) == 8.0);
    CHECK_THROWS_AS(PowerAllocation({0.8, 0.2}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation({0.5, 0.6}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation({-0.1, 0.6}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation({0.2, 0.8}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(PowerAllocation({}, 1.0), std::invalid_argument);
    CHECK_NOTHROW(PowerAllocation({0.0, 0.0, 1.0}, 1.0));
}

TEST_CASE("SIC gap: feasible and infeasible hand examples")
{
    const PowerAllocation alloc({0.2, 0.8}, 1.0);
    const SicConstraint c{1.0, GapMode::aggregate};

    const std::vector<double> ok{10.0, 2.0};
    const auto good = noma::validate_sic_gaps(alloc, noma::order_by_gain(ok), c);
    CHECK(good.feasible);
    CHECK_FALSE(good.first_violation.has_value());
    CHECK(noma::sic_gap(alloc, 1, 2.0, GapMode::aggregate) == doctest::Approx(1.2));
    CHECK(noma::sic_gap(alloc, 1, 10.0, GapMode::aggregate) == doctest::Approx(6.0));
    CHECK(noma::sic_gap(alloc, 0, 10.0, GapMode::aggregate) == doctest::Approx(2.0));

    const std::vector<double> weak{10.0, 0.5};
    const auto bad = noma::validate_sic_gaps(alloc, noma::order_by_gain(weak), c);
    CHECK_FALSE(bad.feasible);
    REQUIRE(bad.first_violation.has_value());
    CHECK(bad.first_violation->user == 1);
    CHECK(bad.first_violation->level == 1);
    CHECK(noma::sic_gap(alloc, 1, 0.5, GapMode::aggregate) == doctest::Approx(0.3));
}

TEST_CASE("SIC gap: zero gap is always feasible")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> ratio(1.0001, 3.0);
    for (int n = 0; n < 200; ++n)
    {
        const std::size_t m = 1 + n % 8;
        const auto alloc = noma::geometric_allocation(m, ratio(rng), 1.0);
        const auto gammas = random_gammas(rng, m);
        CHECK(noma::validate_sic_gaps(alloc, noma::order_by_gain(gammas), SicConstraint{}).feasible);
        CHECK(noma::validate_sic_gaps(alloc, noma::order_by_gain(gammas), SicConstraint{0.0, GapMode::pairwise})
                  .feasible);
    }
}

TEST_CASE("SIC gap: pairwise mode subtracts only the next weaker signal")
{
    const PowerAllocation alloc({1.0 / 7, 2.0 / 7, 4.0 / 7}, 7.0);
    CHECK(noma::sic_gap(alloc, 2, 1.0, GapMode::pairwise) == doctest::Approx(2.0));
    CHECK(noma::sic_gap(alloc, 2, 1.0, GapMode::aggregate) == doctest::Approx(1.0));
    CHECK(noma::sic_gap(alloc, 0, 3.0, GapMode::pairwise) == doctest::Approx(3.0));
}

TEST_CASE("SIC gap: argument checks")
{
    const PowerAllocation alloc({0.2, 0.8}, 1.0);
    const std::vector<double> three{3.0, 2.0, 1.0};
    CHECK_THROWS_AS(noma::validate_sic_gaps(alloc, noma::order_by_gain(three), SicConstraint{}),
                    std::invalid_argument);
    const std::vector<double> two{3.0, 2.0};
    CHECK_THROWS_AS(noma::validate_sic_gaps(alloc, noma::order_by_gain(two), SicConstraint{-1.0}),
                    std::invalid_argument);
}

TEST_CASE("SIC feasibility is monotone in the gap and in the budget")
{
    std::mt19937_64 rng(2026);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int feasible_seen = 0;
    int infeasible_seen = 0;
    for (int n = 0; n < 1000; ++n)
    {
        const std::size_t m = 1 + static_cast<std::size_t>(unit(rng) * 6);
        const double r = 1.2 + 4.0 * unit(rng);
        const double budget = 0.1 + 10.0 * unit(rng);
        const GapMode mode = n % 2 == 0 ? GapMode::aggregate : GapMode::pairwise;
        const auto alloc = noma::geometric_allocation(m, r, budget);
        const auto cluster = noma::order_by_gain(random_gammas(rng, m));
        const double d2 = 5.0 * unit(rng);
        const double d1 = d2 * unit(rng);
        const double c = 1.0 + 4.0 * unit(rng);

        const bool at_d2 = noma::validate_sic_gaps(alloc, cluster, {d2, mode}).feasible;
        const bool at_d1 = noma::validate_sic_gaps(alloc, cluster, {d1, mode}).feasible;
        const bool scaled = noma::validate_sic_gaps(alloc.with_budget(budget * c), cluster, {d2, mode}).feasible;
        if (at_d2)
        {
            CHECK(at_d1);
            CHECK(scaled);
        }
        (at_d2 ? feasible_seen : infeasible_seen)++;

        for (std::size_t j = 0; j < m; ++j)
            CHECK(noma::sic_gap(alloc.with_budget(budget * c), j, cluster.gamma(0), mode) ==
                  doctest::Approx(c * noma::sic_gap(alloc, j, cluster.gamma(0), mode)).epsilon(1e-12));
    }
    CHECK(feasible_seen > 50);
    CHECK(infeasible_seen > 50);
}

TEST_CASE("gap coefficients give the same verdict as the full check")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 0; n < 1000; ++n)
    {
        const std::size_t m = 1 + static_cast<std::size_t>(unit(rng) * 8);
        const GapMode mode = n % 3 == 0 ? GapMode::pairwise : GapMode::aggregate;
        const auto alloc = noma::geometric_allocation(m, 1.05 + 3.0 * unit(rng), 0.5 + 5.0 * unit(rng));
        const auto cluster = noma::order_by_gain(random_gammas(rng, m));
        const double delta = 0.01 + 3.0 * unit(rng);
        const auto coef = noma::sic_gap_coefficients(alloc, mode);
        REQUIRE(coef.size() == m);
        bool fast = true;
        for (std::size_t i = 0; i < m; ++i)
            fast = fast && cluster.gamma(i) * coef[i] >= delta;
        CHECK(fast == noma::validate_sic_gaps(alloc, cluster, {delta, mode}).feasible);
    }
}
