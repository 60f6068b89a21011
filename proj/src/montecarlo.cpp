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

#include "noma/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "noma/error.hpp"
#include "noma/philox.hpp"
#include "parallel.hpp"

namespace noma
{

void TrialPlan::validate() const
{
    if (num_trials < 1)
        throw std::invalid_argument("TrialPlan: num_trials must be >= 1");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("TrialPlan: epsilon must lie in (0, 1)");
    for (double p : power_sweep)
        if (!(std::isfinite(p) && p > 0.0))
            throw std::invalid_argument("TrialPlan: sweep budgets must be finite and > 0");
    if (num_trials > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("TrialPlan: at most 2^32 - 1 trials per run");
}

namespace
{

struct WorkerBuffers
{
    BlockTerms terms;
    std::vector<double> rates;
};

void check_budget(double budget)
{
    if (!(std::isfinite(budget) && budget > 0.0))
        throw std::invalid_argument("budget must be finite and > 0");
}

} // namespace

MetricSeries run_trials(const Scenario& scenario, const TrialPlan& plan, double budget,
                        const simd::KernelTable& kernels)
{
    plan.validate();
    check_budget(budget);
    const std::size_t slots = scenario.num_slots();
    if (plan.metric.kind == MetricKind::per_user && plan.metric.user >= slots)
        throw std::invalid_argument("run_trials: per-user metric index " + std::to_string(plan.metric.user) +
                                    " but scenario '" + std::string(scenario.name()) + "' has " +
                                    std::to_string(slots) + " users");

    const std::size_t n = plan.num_trials;
    const std::size_t blocks = (n + kTrialBlock - 1) / kTrialBlock;
    MetricSeries series(n);
    std::vector<WorkerBuffers> buffers(detail::effective_workers(blocks, plan.workers));
    const double bandwidth = scenario.bandwidth();

    detail::parallel_for(blocks, plan.workers, [&](std::size_t block, unsigned worker) {
        WorkerBuffers& buf = buffers[worker];
        const std::size_t first = block * kTrialBlock;
        const std::size_t count = std::min(kTrialBlock, n - first);
        scenario.fill_block(plan.seed, first, count, budget, buf.terms, kernels);
        buf.rates.resize(count);

        std::span<double> metric(series.data() + first, count);
        auto rate_of = [&](std::size_t slot, std::span<double> out) {
            kernels.shannon_rate(buf.terms.signal(slot), buf.terms.interference(slot), bandwidth, out);
        };
        switch (plan.metric.kind)
        {
        case MetricKind::per_user:
            rate_of(plan.metric.user, metric);
            break;
        case MetricKind::min_user_rate:
        case MetricKind::sum_rate:
            rate_of(0, metric);
            for (std::size_t s = 1; s < slots; ++s)
            {
                rate_of(s, buf.rates);
                if (plan.metric.kind == MetricKind::min_user_rate)
                    kernels.min_accumulate(metric, buf.rates);
                else
                    kernels.add_accumulate(metric, buf.rates);
            }
            break;
        }
        for (std::size_t j = 0; j < count; ++j)
            if (!std::isfinite(metric[j]))
                throw EstimationError("run_trials: non-finite metric at trial " + std::to_string(first + j));
    });
    return series;
}

namespace
{

std::size_t quantile_index(std::size_t n, double q)
{
    const double pos = std::ceil(q * static_cast<double>(n));
    const std::size_t k = pos < 1.0 ? 0 : static_cast<std::size_t>(pos) - 1;
    return std::min(k, n - 1);
}

void check_q(double q)
{
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("quantile level must lie in (0, 1)");
}

} // namespace

double empirical_quantile(std::span<const double> series, double q)
{
    if (series.empty())
        throw std::invalid_argument("empirical_quantile: empty series");
    check_q(q);
    std::vector<double> sorted(series.begin(), series.end());
    const std::size_t k = quantile_index(sorted.size(), q);
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
    return sorted[k];
}

double fraction_below(std::span<const double> series, double threshold)
{
    if (series.empty())
        throw std::invalid_argument("fraction_below: empty series");
    std::size_t below = 0;
    for (double v : series)
        below += v < threshold ? 1 : 0;
    return static_cast<double>(below) / static_cast<double>(series.size());
}

CapacityPoint capacity_from_series(std::span<const double> series, const TrialPlan& plan, double budget)
{
    if (series.empty())
        throw std::invalid_argument("capacity_from_series: empty series");
    check_q(plan.epsilon);
    std::vector<double> sorted(series.begin(), series.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const std::size_t k = quantile_index(n, plan.epsilon);

    CapacityPoint point;
    point.budget = budget;
    point.c_eps = sorted[k];
    point.outage_at_c_eps = fraction_below(sorted, point.c_eps);

    // Percentile bootstrap. A resample's k-th order statistic is sorted[j],
    // where j is the k-th smallest of the n drawn indices, so a histogram of
    // indices replaces sorting each resample.
    const std::size_t resamples = plan.bootstrap_resamples;
    if (resamples == 0)
        return point;
    const PhiloxKey key = PhiloxKey::from_seed(plan.seed);
    const std::uint64_t n64 = n;
    std::vector<double> replicates(resamples);
    std::vector<std::vector<std::uint32_t>> histograms(detail::effective_workers(resamples, plan.workers));

    detail::parallel_for(resamples, plan.workers, [&](std::size_t b, unsigned worker) {
        std::vector<std::uint32_t>& hist = histograms[worker];
        hist.assign(n, 0u);
        for (std::uint64_t d = 0; d < n64; d += 4)
        {
            const PhiloxBlock words =
                philox4x32({static_cast<std::uint32_t>(d / 4), static_cast<std::uint32_t>((d / 4) >> 32),
                            static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(StreamDomain::bootstrap)},
                           key);
            for (std::uint64_t w = 0; w < 4 && d + w < n64; ++w)
                ++hist[static_cast<std::size_t>((std::uint64_t{words[w]} * n64) >> 32)];
        }
        std::size_t seen = 0;
        std::size_t j = 0;
        for (; j < n; ++j)
        {
            seen += hist[j];
            if (seen > k)
                break;
        }
        replicates[b] = sorted[j];
    });

    point.ci_halfwidth = 0.5 * (empirical_quantile(replicates, 0.975) - empirical_quantile(replicates, 0.025));
    return point;
}

CapacityPoint outage_capacity(const Scenario& scenario, const TrialPlan& plan, double budget)
{
    const MetricSeries series = run_trials(scenario, plan, budget);
    return capacity_from_series(series, plan, budget);
}

double outage_probability(const Scenario& scenario, const TrialPlan& plan, double budget, double target_rate)
{
    if (!(target_rate >= 0.0))
        throw std::invalid_argument("outage_probability: target rate must be >= 0");
    return fraction_below(run_trials(scenario, plan, budget), target_rate);
}

OutageCurve outage_curve(const Scenario& scenario, const TrialPlan& plan)
{
    plan.validate();
    OutageCurve curve;
    curve.points.reserve(plan.power_sweep.size());
    for (double budget : plan.power_sweep)
        curve.points.push_back(outage_capacity(scenario, plan, budget));
    return curve;
}

DiversityEstimate estimate_diversity_order(const Scenario& scenario, const TrialPlan& plan, double target_rate,
                                           std::span<const double> budgets)
{
    if (budgets.size() < 3)
        throw std::invalid_argument("estimate_diversity_order: need at least three sweep points");
    if (!(target_rate > 0.0))
        throw std::invalid_argument("estimate_diversity_order: target rate must be > 0");

    DiversityEstimate est;
    for (double budget : budgets)
    {
        const MetricSeries series = run_trials(scenario, plan, budget);
        DiversityPoint point;
        point.budget = budget;
        for (double v : series)
            point.outage_count += v < target_rate ? 1 : 0;
        if (point.outage_count == 0)
            throw EstimationError("estimate_diversity_order: no outage events at " +
                                  std::to_string(linear_to_db(budget)) + " dB with " +
                                  std::to_string(plan.num_trials) + " trials");
        point.outage = static_cast<double>(point.outage_count) / static_cast<double>(series.size());
        est.points.push_back(point);
    }

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (const DiversityPoint& p : est.points)
    {
        mean_x += std::log10(p.budget);
        mean_y += -std::log10(p.outage);
    }
    const double count = static_cast<double>(est.points.size());
    mean_x /= count;
    mean_y /= count;
    double sxy = 0.0;
    double sxx = 0.0;
    for (const DiversityPoint& p : est.points)
    {
        const double dx = std::log10(p.budget) - mean_x;
        sxy += dx * (-std::log10(p.outage) - mean_y);
        sxx += dx * dx;
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("estimate_diversity_order: sweep points must be distinct");
    est.slope = sxy / sxx;
    return est;
}

double required_power_db(const Scenario& scenario, const TrialPlan& plan, double target_c_eps, double lo_db,
                         double hi_db, double tol_db)
{
    if (!(lo_db < hi_db) || !(tol_db > 0.0))
        throw std::invalid_argument("required_power_db: need lo_db < hi_db and tol_db > 0");
    TrialPlan quick = plan;
    quick.bootstrap_resamples = 0;
    auto meets = [&](double db) {
        const double budget = db_to_linear(db);
        return capacity_from_series(run_trials(scenario, quick, budget), quick, budget).c_eps >= target_c_eps;
    };
    if (meets(lo_db))
        throw EstimationError("required_power_db: target already met at the lower bracket end");
    if (!meets(hi_db))
        throw EstimationError("required_power_db: target not reached at the upper bracket end");
    while (hi_db - lo_db > tol_db)
    {
        const double mid = 0.5 * (lo_db + hi_db);
        if (meets(mid))
            hi_db = mid;
        else
            lo_db = mid;
    }
    return hi_db;
}

} // namespace noma
