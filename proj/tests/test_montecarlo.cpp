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
#include <cstring>
#include <memory>
#include <stdexcept>
#include <vector>

#include "noma/error.hpp"
#include "noma/montecarlo.hpp"
#include "noma/scenario.hpp"

using noma::MetricKind;
using noma::TrialPlan;

namespace
{

bool same_bits(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Zero-variance scenario: every trial yields the same per-slot SINR terms.
class FixedScenario final : public noma::Scenario
{
  public:
    explicit FixedScenario(std::vector<double> snr) : snr_(std::move(snr)) {}

    std::string_view name() const override { return "fixed"; }
    std::size_t num_slots() const override { return snr_.size(); }

    noma::RateVector trial_rates(std::uint64_t, std::uint64_t, double budget) const override
    {
        noma::RateVector r;
        for (double s : snr_)
            r.values.push_back(noma::shannon_rate(budget * s, 0.0));
        return r;
    }

    void fill_block(std::uint64_t, std::uint64_t, std::size_t count, double budget, noma::BlockTerms& terms,
                    const noma::simd::KernelTable&) const override
    {
        terms.reset(snr_.size(), count);
        for (std::size_t s = 0; s < snr_.size(); ++s)
            for (std::size_t t = 0; t < count; ++t)
            {
                terms.signal(s)[t] = budget * snr_[s];
                terms.interference(s)[t] = 0.0;
            }
    }

  private:
    std::vector<double> snr_;
};

TrialPlan plan_with(std::uint64_t trials, std::uint64_t seed = 1)
{
    TrialPlan plan;
    plan.num_trials = trials;
    plan.seed = seed;
    return plan;
}

std::vector<std::unique_ptr<noma::Scenario>> scenario_zoo()
{
    std::vector<std::unique_ptr<noma::Scenario>> zoo;
    zoo.push_back(noma::make_siso_scenario({}));

    noma::SisoParams siso;
    siso.m = 5;
    siso.ratio = 1.7;
    siso.bandwidth = 2.0;
    zoo.push_back(noma::make_siso_scenario(siso));
    siso.ini_mode = noma::IniMode::literal;
    siso.sic = {0.3, noma::GapMode::aggregate};
    siso.ratio = 3.0;
    zoo.push_back(noma::make_siso_scenario(siso));
    siso.user_scale = {1.0, 0.5, 0.25, 2.0, 0.0};
    siso.sic = {0.2, noma::GapMode::pairwise};
    zoo.push_back(noma::make_siso_scenario(siso));

    noma::MimoParams mimo;
    zoo.push_back(noma::make_mimo_scenario(mimo));
    mimo.clusters = 3;
    mimo.m = 4;
    mimo.leakage = 0.3;
    mimo.cross_gain = 0.5;
    mimo.sic = {0.1, noma::GapMode::aggregate};
    zoo.push_back(noma::make_mimo_scenario(mimo));

    noma::CompParams comp;
    zoo.push_back(noma::make_comp_scenario(comp));
    comp.num_bs = 3;
    comp.m = 4;
    comp.cross_gain = 0.4;
    comp.ratio = 2.5;
    zoo.push_back(noma::make_comp_scenario(comp));
    comp.num_bs = 1;
    comp.m = 1;
    zoo.push_back(noma::make_comp_scenario(comp));

    noma::CoopParams coop;
    coop.transmitters = 3;
    coop.users = 6;
    zoo.push_back(noma::make_coop_scenario(coop));
    coop.combining = noma::CombiningMode::coherent;
    coop.budget = noma::CoopBudget::per_tx;
    coop.sic = {0.5, noma::GapMode::aggregate};
    zoo.push_back(noma::make_coop_scenario(coop));
    return zoo;
}

} // namespace

TEST_CASE("empirical quantile: lower order statistic")
{
    const std::vector<double> ten{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    CHECK(noma::empirical_quantile(ten, 0.1) == 1.0);
    CHECK(noma::empirical_quantile(ten, 0.11) == 2.0);
    CHECK(noma::empirical_quantile(ten, 0.95) == 10.0);
    const std::vector<double> three{3, 1, 2};
    CHECK(noma::empirical_quantile(three, 0.5) == 2.0);
    const std::vector<double> flat(17, 4.25);
    for (double q : {0.01, 0.3, 0.99})
        CHECK(noma::empirical_quantile(flat, q) == 4.25);
    CHECK_THROWS_AS(noma::empirical_quantile(std::vector<double>{}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(noma::empirical_quantile(ten, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(noma::empirical_quantile(ten, 1.0), std::invalid_argument);
}

TEST_CASE("trial plan validation")
{
    const auto scenario = noma::make_siso_scenario({});
    TrialPlan plan = plan_with(0);
    CHECK_THROWS_AS(noma::run_trials(*scenario, plan, 1.0), std::invalid_argument);
    plan = plan_with(10);
    plan.epsilon = 1.5;
    CHECK_THROWS_AS(noma::run_trials(*scenario, plan, 1.0), std::invalid_argument);
    plan.epsilon = 0.1;
    plan.power_sweep = {1.0, -2.0};
    CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
    plan.power_sweep = {};
    CHECK_THROWS_AS(noma::run_trials(*scenario, plan, 0.0), std::invalid_argument);
    plan.metric = {MetricKind::per_user, 1};
    CHECK_THROWS_AS(noma::run_trials(*scenario, plan, 1.0), std::invalid_argument);
}

TEST_CASE("block path agrees with the per-trial reference for every scenario")
{
    const auto zoo = scenario_zoo();
    const auto& kernels = noma::simd::active_kernels();
    for (const auto& scenario : zoo)
    {
        CAPTURE(scenario->name());
        CAPTURE(scenario->num_slots());
        for (double budget : {0.3, 10.0, 1000.0})
        {
            const std::size_t count = 200;
            const std::uint64_t first = 4000;
            noma::BlockTerms terms;
            scenario->fill_block(9, first, count, budget, terms, kernels);
            REQUIRE(terms.slots() == scenario->num_slots());
            std::vector<double> rates(count);
            for (std::size_t s = 0; s < scenario->num_slots(); ++s)
            {
                kernels.shannon_rate(terms.signal(s), terms.interference(s), scenario->bandwidth(), rates);
                for (std::size_t t = 0; t < count; ++t)
                {
                    const double want = scenario->trial_rates(9, first + t, budget)[s];
                    CHECK(std::abs(rates[t] - want) <= 1e-12 * std::max(1.0, std::abs(want)));
                }
            }
        }
    }
}

TEST_CASE("metrics reduce slots in the expected way")
{
    noma::SisoParams p;
    p.m = 4;
    const auto scenario = noma::make_siso_scenario(p);
    TrialPlan plan = plan_with(300, 5);
    plan.metric = {MetricKind::min_user_rate, 0};
    const auto mins = noma::run_trials(*scenario, plan, 20.0);
    plan.metric = {MetricKind::sum_rate, 0};
    const auto sums = noma::run_trials(*scenario, plan, 20.0);
    plan.metric = {MetricKind::per_user, 3};
    const auto weakest = noma::run_trials(*scenario, plan, 20.0);
    for (std::size_t t = 0; t < 300; ++t)
    {
        const auto ref = scenario->trial_rates(5, t, 20.0);
        CHECK(mins[t] == doctest::Approx(ref.min()).epsilon(1e-12));
        CHECK(sums[t] == doctest::Approx(ref.sum()).epsilon(1e-12));
        CHECK(weakest[t] == doctest::Approx(ref[3]).epsilon(1e-12));
    }
}

TEST_CASE("run_trials is deterministic across runs, workers and kernels")
{
    const auto zoo = scenario_zoo();
    for (const auto& scenario : zoo)
    {
        CAPTURE(scenario->name());
        TrialPlan plan = plan_with(5000, 77);
        plan.workers = 1;
        const auto one = noma::run_trials(*scenario, plan, 31.6);
        plan.workers = 8;
        const auto eight = noma::run_trials(*scenario, plan, 31.6);
        const auto again = noma::run_trials(*scenario, plan, 31.6);
        CHECK(same_bits(one, eight));
        CHECK(same_bits(eight, again));
        CHECK(one.size() == 5000);
        if (noma::simd::is_supported(noma::simd::Isa::avx2))
        {
            const auto scalar = noma::run_trials(*scenario, plan, 31.6, noma::simd::scalar_kernels());
            const auto vector = noma::run_trials(*scenario, plan, 31.6, noma::simd::kernels_for(noma::simd::Isa::avx2));
            CHECK(same_bits(scalar, vector));
            CHECK(same_bits(scalar, one));
        }
    }
    const auto scenario = noma::make_siso_scenario({});
    CHECK(noma::run_trials(*scenario, plan_with(1), 1.0).size() == 1);
}

TEST_CASE("capacity estimate is bit-identical across worker counts")
{
    const auto scenario = noma::make_siso_scenario({});
    TrialPlan plan = plan_with(20000, 3);
    plan.workers = 1;
    const auto a = noma::outage_capacity(*scenario, plan, 10.0);
    plan.workers = 6;
    const auto b = noma::outage_capacity(*scenario, plan, 10.0);
    CHECK(std::memcmp(&a, &b, sizeof a) == 0);
}

TEST_CASE("zero-variance scenario: constant series and exact capacity")
{
    const FixedScenario fixed({3.0, 0.5});
    TrialPlan plan = plan_with(3000);
    const auto series = noma::run_trials(fixed, plan, 2.0);
    for (double v : series)
        CHECK(v == series.front());
    CHECK(series.front() == doctest::Approx(std::log2(2.0)).epsilon(1e-14));
    const auto point = noma::outage_capacity(fixed, plan, 2.0);
    CHECK(point.c_eps == series.front());
    CHECK(point.ci_halfwidth == 0.0);
    CHECK(point.outage_at_c_eps == 0.0);
}

TEST_CASE("empirical outage at the estimate never exceeds epsilon")
{
    const auto zoo = scenario_zoo();
    for (const auto& scenario : zoo)
        for (double eps : {0.01, 0.1, 0.37})
        {
            TrialPlan plan = plan_with(2001, 13);
            plan.epsilon = eps;
            plan.bootstrap_resamples = 50;
            const auto point = noma::outage_capacity(*scenario, plan, 5.0);
            CHECK(point.outage_at_c_eps <= eps);
            CHECK(point.c_eps >= 0.0);
            CHECK(point.ci_halfwidth >= 0.0);
        }
}

TEST_CASE("single-user Rayleigh capacity matches the exponential quantile")
{
    const auto scenario = noma::make_siso_scenario({});
    TrialPlan plan = plan_with(100000, 1);
    const auto point = noma::outage_capacity(*scenario, plan, 10.0);
    const double x = -std::log(0.9);
    const double oracle = std::log2(1.0 + 10.0 * x);
    CHECK(std::abs(point.c_eps - oracle) <= 3.0 * point.ci_halfwidth);

    // Asymptotic half-width of a sample quantile: 1.96 sqrt(q(1-q)/n) / f(C).
    const double density = std::exp(-x) * (1.0 + 10.0 * x) * std::log(2.0) / 10.0;
    const double asymptotic = 1.96 * std::sqrt(0.1 * 0.9 / 100000.0) / density;
    CHECK(point.ci_halfwidth > 0.5 * asymptotic);
    CHECK(point.ci_halfwidth < 2.0 * asymptotic);
}

TEST_CASE("outage probability: exponential CDF and edge cases")
{
    const auto scenario = noma::make_siso_scenario({});
    TrialPlan plan = plan_with(100000, 2);
    const double p = noma::outage_probability(*scenario, plan, 10.0, 1.0);
    CHECK(std::abs(p - (1.0 - std::exp(-0.1))) < 0.003);
    CHECK(noma::outage_probability(*scenario, plan, 10.0, 0.0) == 0.0);
    CHECK(noma::outage_probability(*scenario, plan, 10.0, 1e6) == 1.0);
}

TEST_CASE("C_eps never decreases along the sweep")
{
    const auto zoo = scenario_zoo();
    for (const auto& scenario : zoo)
    {
        CAPTURE(scenario->name());
        TrialPlan plan = plan_with(3000, 21);
        plan.bootstrap_resamples = 20;
        for (double db = -10.0; db <= 40.0; db += 5.0)
            plan.power_sweep.push_back(noma::db_to_linear(db));
        const auto curve = noma::outage_curve(*scenario, plan);
        REQUIRE(curve.points.size() == plan.power_sweep.size());
        for (std::size_t i = 1; i < curve.points.size(); ++i)
            CHECK(curve.points[i].c_eps >= curve.points[i - 1].c_eps);
    }
}

TEST_CASE("diversity order of a single Rayleigh link")
{
    const auto scenario = noma::make_siso_scenario({});
    TrialPlan plan = plan_with(200000, 4);
    const std::vector<double> budgets{noma::db_to_linear(10), noma::db_to_linear(15), noma::db_to_linear(20)};
    const auto est = noma::estimate_diversity_order(*scenario, plan, 1.0, budgets);
    CHECK(est.slope == doctest::Approx(1.0).epsilon(0.1));
    REQUIRE(est.points.size() == 3);
    for (const auto& pt : est.points)
        CHECK(pt.outage_count > 0);
}

TEST_CASE("diversity estimation refuses silent numbers")
{
    const FixedScenario fixed({1.0});
    TrialPlan plan = plan_with(1000);
    const std::vector<double> budgets{10.0, 100.0, 1000.0};
    CHECK_THROWS_AS(noma::estimate_diversity_order(fixed, plan, 0.5, budgets), noma::EstimationError);
    const std::vector<double> two{10.0, 100.0};
    CHECK_THROWS_AS(noma::estimate_diversity_order(fixed, plan, 100.0, two), std::invalid_argument);
}

TEST_CASE("required power bisection")
{
    const auto scenario = noma::make_siso_scenario({});
    TrialPlan plan = plan_with(100000, 6);
    const double target = std::log2(1.0 + 10.0 * -std::log(0.9));
    const double db = noma::required_power_db(*scenario, plan, target, -10.0, 30.0);
    CHECK(db == doctest::Approx(10.0).epsilon(0.02));
    CHECK_THROWS_AS(noma::required_power_db(*scenario, plan, target, 20.0, 30.0), noma::EstimationError);
    CHECK_THROWS_AS(noma::required_power_db(*scenario, plan, target, -20.0, 0.0), noma::EstimationError);
}

TEST_CASE("dB conversion round trip")
{
    CHECK(noma::db_to_linear(0.0) == 1.0);
    CHECK(noma::db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(noma::linear_to_db(100.0) == doctest::Approx(20.0).epsilon(1e-15));
}
