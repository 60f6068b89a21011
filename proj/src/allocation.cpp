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

#include "noma/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace noma
{

PowerAllocation::PowerAllocation(std::vector<double> fractions, double budget)
    : fractions_(std::move(fractions)), budget_(budget)
{
    if (fractions_.empty())
        throw std::invalid_argument("PowerAllocation: at least one user required");
    if (!(std::isfinite(budget_) && budget_ > 0.0))
        throw std::invalid_argument("PowerAllocation: budget must be finite and > 0");
    double sum = 0.0;
    for (std::size_t i = 0; i < fractions_.size(); ++i)
    {
        const double f = fractions_[i];
        if (!(std::isfinite(f) && f >= 0.0))
            throw std::invalid_argument("PowerAllocation: fractions must be finite and >= 0");
        if (i > 0 && f < fractions_[i - 1])
            throw std::invalid_argument("PowerAllocation: fractions must be non-decreasing (strongest user first)");
        sum += f;
    }
    if (sum > 1.0 + 1e-12)
        throw std::invalid_argument("PowerAllocation: fractions sum to more than the budget");
}

std::vector<double> geometric_fractions(std::size_t m, double ratio)
{
    if (m == 0)
        throw std::invalid_argument("geometric_fractions: cluster size must be >= 1");
    if (!(std::isfinite(ratio) && ratio > 1.0))
        throw std::invalid_argument("geometric_fractions: ratio must be > 1");

    // Written with negative powers, r^(i-1-m) (r - 1) / (1 - r^-m), so that
    // large clusters never overflow r^m.
    const double md = static_cast<double>(m);
    const double scale = (ratio - 1.0) / (1.0 - std::pow(ratio, -md));
    std::vector<double> f(m);
    for (std::size_t i = 0; i < m; ++i)
        f[i] = std::pow(ratio, static_cast<double>(i) - md) * scale;
    f[m - 1] = 1.0;
    // The largest share absorbs the rounding so that the shares add up to one.
    double rest = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i)
        rest += f[i];
    f[m - 1] = 1.0 - rest;
    return f;
}

double sic_gap(const PowerAllocation& alloc, std::size_t level, double gamma, GapMode mode)
{
    double below = 0.0;
    if (mode == GapMode::aggregate)
    {
        for (std::size_t l = 0; l < level; ++l)
            below += alloc.power(l);
    }
    else if (level > 0)
    {
        below = alloc.power(level - 1);
    }
    return gamma * (alloc.power(level) - below);
}

SicVerdict validate_sic_gaps(const PowerAllocation& alloc, const OrderedCluster& cluster, const SicConstraint& c)
{
    if (alloc.size() != cluster.size())
        throw std::invalid_argument("validate_sic_gaps: allocation and cluster sizes differ");
    if (!(c.delta >= 0.0))
        throw std::invalid_argument("validate_sic_gaps: delta must be >= 0");
    if (c.delta == 0.0)
        return SicVerdict{}; // ideal SIC
    for (std::size_t i = 0; i < cluster.size(); ++i)
    {
        for (std::size_t j = i; j < cluster.size(); ++j)
        {
            if (sic_gap(alloc, j, cluster.gamma(i), c.mode) < c.delta)
                return SicVerdict{false, SicViolation{i, j}};
        }
    }
    return SicVerdict{};
}

std::vector<double> sic_gap_coefficients(const PowerAllocation& alloc, GapMode mode)
{
    const std::size_t m = alloc.size();
    std::vector<double> coeff(m);
    for (std::size_t j = 0; j < m; ++j)
        coeff[j] = sic_gap(alloc, j, 1.0, mode);
    // user i needs levels i..m-1: suffix minimum.
    for (std::size_t j = m - 1; j-- > 0;)
        coeff[j] = std::min(coeff[j], coeff[j + 1]);
    return coeff;
}

} // namespace noma
