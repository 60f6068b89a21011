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

#pragma once

// Fading-trial engine and the estimators built on it.
//
// Trial t of a plan always sees the channel substreams keyed by (plan.seed, t),
// and every reduction runs in trial order, so results are bit-identical for
// any worker count. The budget axis is transmit SNR: noise is normalized to one.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noma/scenario.hpp"
#include "noma/simd/kernels.hpp"

namespace noma
{

enum class MetricKind
{
    min_user_rate, // cluster-wide outage: the worst user decides
    per_user,      // one slot of the scenario
    sum_rate,
};

struct Metric
{
    MetricKind kind = MetricKind::min_user_rate;
    std::size_t user = 0; // slot index for per_user
};

struct TrialPlan
{
    std::uint64_t num_trials = 10000;
    double epsilon = 0.1;
    Metric metric;
    std::vector<double> power_sweep; // linear budgets
    std::uint64_t seed = 1;
    unsigned workers = 0;                  // 0: one per hardware thread
    std::size_t bootstrap_resamples = 1000;

    /// Throws std::invalid_argument on a violated invariant.
    void validate() const;
};

using MetricSeries = std::vector<double>;

/// Trials per work unit. Fixed so that block boundaries never depend on the worker count.
inline constexpr std::size_t kTrialBlock = 1024;

/// One metric value per trial, in trial order. Throws std::invalid_argument if
/// the metric does not fit the scenario and EstimationError on a non-finite value.
MetricSeries run_trials(const Scenario& scenario, const TrialPlan& plan, double budget,
                        const simd::KernelTable& kernels = simd::active_kernels());

/// Lower empirical quantile: the order statistic at 0-based index ceil(q n) - 1.
double empirical_quantile(std::span<const double> series, double q);

/// Fraction of values strictly below threshold.
double fraction_below(std::span<const double> series, double threshold);

struct CapacityPoint
{
    double budget = 0.0;
    double c_eps = 0.0;
    double ci_halfwidth = 0.0;   // half the 95% percentile-bootstrap interval
    double outage_at_c_eps = 0.0;
};

/// C_eps, its bootstrap half-width and the empirical outage at C_eps for an existing series.
CapacityPoint capacity_from_series(std::span<const double> series, const TrialPlan& plan, double budget);

CapacityPoint outage_capacity(const Scenario& scenario, const TrialPlan& plan, double budget);

double outage_probability(const Scenario& scenario, const TrialPlan& plan, double budget, double target_rate);

struct OutageCurve
{
    std::vector<CapacityPoint> points;
};

/// outage_capacity at every budget of plan.power_sweep.
OutageCurve outage_curve(const Scenario& scenario, const TrialPlan& plan);

struct DiversityPoint
{
    double budget = 0.0;
    double outage = 0.0;
    std::uint64_t outage_count = 0;
};

struct DiversityEstimate
{
    double slope = 0.0; // least-squares slope of -log10 P_out against log10 budget
    std::vector<DiversityPoint> points;
};

/// Throws EstimationError when any sweep point sees zero outage events, and
/// std::invalid_argument for fewer than three sweep points.
DiversityEstimate estimate_diversity_order(const Scenario& scenario, const TrialPlan& plan, double target_rate,
                                           std::span<const double> budgets);

/// Smallest budget (dB) in [lo_db, hi_db] at which C_eps reaches target,
/// located by bisection to tol_db. C_eps is monotone in the budget for a fixed
/// seed, so the bracket is valid. Throws EstimationError if the target is
/// already met at lo_db or still missed at hi_db.
double required_power_db(const Scenario& scenario, const TrialPlan& plan, double target_c_eps, double lo_db,
                         double hi_db, double tol_db = 0.01);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

} // namespace noma
