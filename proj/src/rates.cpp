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

#include "noma/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace noma
{

OrderedCluster order_by_gain(std::span<const double> gammas, double bandwidth)
{
    if (gammas.empty())
        throw std::invalid_argument("order_by_gain: empty cluster");
    if (!(std::isfinite(bandwidth) && bandwidth > 0.0))
        throw std::invalid_argument("order_by_gain: bandwidth must be finite and > 0");
    for (double g : gammas)
        if (!(std::isfinite(g) && g >= 0.0))
            throw std::invalid_argument("order_by_gain: gammas must be finite and >= 0");

    OrderedCluster cluster;
    cluster.bandwidth_ = bandwidth;
    cluster.order_.resize(gammas.size());
    std::iota(cluster.order_.begin(), cluster.order_.end(), std::size_t{0});
    std::stable_sort(cluster.order_.begin(), cluster.order_.end(),
                     [&](std::size_t a, std::size_t b) { return gammas[a] > gammas[b]; });
    cluster.gammas_.reserve(gammas.size());
    for (std::size_t id : cluster.order_)
        cluster.gammas_.push_back(gammas[id]);
    return cluster;
}

double RateVector::min() const
{
    if (values.empty())
        throw std::invalid_argument("RateVector::min: empty");
    return *std::min_element(values.begin(), values.end());
}

double RateVector::sum() const
{
    double s = 0.0;
    for (double v : values)
        s += v;
    return s;
}

double shannon_rate(double signal, double interference, double bandwidth)
{
    return bandwidth * std::log2(1.0 + signal / (interference + 1.0));
}

RateVector rate_siso_noma(const OrderedCluster& cluster, const PowerAllocation& alloc, IniMode mode)
{
    if (cluster.size() != alloc.size())
        throw std::invalid_argument("rate_siso_noma: cluster has " + std::to_string(cluster.size()) +
                                    " users but allocation has " + std::to_string(alloc.size()));
    RateVector out;
    out.values.resize(cluster.size());
    double weaker_power = 0.0;    // sum_{j<i} p_j
    double literal_interf = 0.0;  // sum_{j<i} p_j gamma_j
    for (std::size_t i = 0; i < cluster.size(); ++i)
    {
        const double gamma = cluster.gamma(i);
        const double p = alloc.power(i);
        const double interference = mode == IniMode::own_channel ? weaker_power * gamma : literal_interf;
        out.values[i] = shannon_rate(p * gamma, interference, cluster.bandwidth());
        weaker_power += p;
        literal_interf += p * gamma;
    }
    return out;
}

RateVector rate_oma_baseline(const OrderedCluster& cluster, double budget)
{
    if (!(std::isfinite(budget) && budget > 0.0))
        throw std::invalid_argument("rate_oma_baseline: budget must be finite and > 0");
    const double share = cluster.bandwidth() / static_cast<double>(cluster.size());
    RateVector out;
    out.values.reserve(cluster.size());
    for (double gamma : cluster.gammas())
        out.values.push_back(shannon_rate(budget * gamma, 0.0, share));
    return out;
}

namespace
{

void check_comp(const CompTopology& topo, std::span<const PowerAllocation> allocs)
{
    if (topo.num_bs() == 0)
        throw std::invalid_argument("CoMP topology needs at least one BS");
    if (allocs.size() != topo.num_bs())
        throw std::invalid_argument("CoMP: one allocation per BS required");
    for (std::size_t b = 0; b < topo.num_bs(); ++b)
    {
        const CompCell& cell = topo.cells[b];
        if (allocs[b].size() != cell.centre_gammas.size() + 1)
            throw std::invalid_argument("CoMP: allocation of BS " + std::to_string(b) +
                                        " must cover its centre users plus the edge user");
        if (cell.cross_gammas.size() != cell.centre_gammas.size())
            throw std::invalid_argument("CoMP: cross gains missing for a centre user of BS " + std::to_string(b));
        for (const auto& row : cell.cross_gammas)
            if (row.size() != topo.num_bs())
                throw std::invalid_argument("CoMP: cross gains need one entry per BS");
    }
}

// Total power a BS spends on its centre users.
double centre_power(const PowerAllocation& alloc)
{
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < alloc.size(); ++j)
        s += alloc.power(j);
    return s;
}

} // namespace

double rate_comp_edge(const CompTopology& topo, std::span<const PowerAllocation> allocs)
{
    check_comp(topo, allocs);
    double signal = 0.0;
    double interference = 0.0;
    bool served = false;
    for (std::size_t b = 0; b < topo.num_bs(); ++b)
    {
        const double gamma = topo.cells[b].edge_gamma;
        if (!(std::isfinite(gamma) && gamma >= 0.0))
            throw std::invalid_argument("rate_comp_edge: edge gamma must be finite and >= 0");
        served = served || gamma > 0.0;
        const PowerAllocation& alloc = allocs[b];
        signal += alloc.power(alloc.size() - 1) * gamma;
        interference += centre_power(alloc) * gamma;
    }
    if (!served)
        throw std::invalid_argument("rate_comp_edge: edge user has no serving link");
    return shannon_rate(signal, interference);
}

double rate_comp_center(const CompTopology& topo, std::span<const PowerAllocation> allocs, std::size_t bs,
                        std::size_t centre)
{
    check_comp(topo, allocs);
    if (bs >= topo.num_bs())
        throw std::invalid_argument("rate_comp_center: BS index out of range");
    const CompCell& cell = topo.cells[bs];
    if (centre >= cell.centre_gammas.size())
        throw std::invalid_argument("rate_comp_center: centre user index out of range");

    const PowerAllocation& own = allocs[bs];
    const double gamma = cell.centre_gammas[centre];
    // Stronger centre users (smaller canonical index, smaller power) stay
    // superimposed; the edge signal and weaker centre users are cancelled.
    double stronger = 0.0;
    for (std::size_t k = 0; k < centre; ++k)
        stronger += own.power(k);
    double inter = 0.0;
    for (std::size_t m = 0; m < topo.num_bs(); ++m)
    {
        if (m == bs)
            continue;
        inter += centre_power(allocs[m]) * cell.cross_gammas[centre][m];
    }
    return shannon_rate(own.power(centre) * gamma, stronger * gamma + inter);
}

std::vector<std::vector<double>> zf_residual_ici(std::span<const MimoCluster> clusters, double leakage)
{
    if (!(leakage >= 0.0 && leakage <= 1.0))
        throw std::invalid_argument("zf_residual_ici: leakage must lie in [0, 1]");
    const std::size_t beams = clusters.size();
    std::vector<std::vector<double>> ici(beams);
    for (std::size_t c = 0; c < beams; ++c)
    {
        const MimoCluster& cl = clusters[c];
        if (cl.head >= cl.beam_gains.size())
            throw std::invalid_argument("zf_residual_ici: head index out of range in cluster " + std::to_string(c));
        ici[c].assign(cl.beam_gains.size(), 0.0);
        for (std::size_t u = 0; u < cl.beam_gains.size(); ++u)
        {
            if (cl.beam_gains[u].size() != beams)
                throw std::invalid_argument("zf_residual_ici: every user needs one gain per beam");
            if (u == cl.head)
                continue;
            double sum = 0.0;
            for (std::size_t other = 0; other < beams; ++other)
            {
                if (other == c)
                    continue;
                sum += clusters[other].power * cl.beam_gains[u][other] * leakage;
            }
            ici[c][u] = sum;
        }
    }
    return ici;
}

std::vector<RateVector> rate_mimo_noma(std::span<const MimoCluster> clusters,
                                       const std::vector<std::vector<double>>& residual_ici,
                                       std::span<const PowerAllocation> allocs, IniMode mode, double bandwidth)
{
    if (residual_ici.size() != clusters.size() || allocs.size() != clusters.size())
        throw std::invalid_argument("rate_mimo_noma: clusters, ICI and allocations must have equal counts");
    std::vector<RateVector> out;
    out.reserve(clusters.size());
    std::vector<double> gammas;
    for (std::size_t c = 0; c < clusters.size(); ++c)
    {
        const MimoCluster& cl = clusters[c];
        if (residual_ici[c].size() != cl.beam_gains.size())
            throw std::invalid_argument("rate_mimo_noma: ICI size mismatch in cluster " + std::to_string(c));
        gammas.clear();
        for (std::size_t u = 0; u < cl.beam_gains.size(); ++u)
        {
            if (c >= cl.beam_gains[u].size())
                throw std::invalid_argument("rate_mimo_noma: user lacks a gain for its own beam");
            gammas.push_back(cl.beam_gains[u][c] / (residual_ici[c][u] + 1.0));
        }
        out.push_back(rate_siso_noma(order_by_gain(gammas, bandwidth), allocs[c], mode));
    }
    return out;
}

double coop_effective_gain(const CoopCluster& coop, std::size_t user)
{
    if (user >= coop.gains.size())
        throw std::invalid_argument("coop_effective_gain: user index out of range");
    const std::vector<double>& g = coop.gains[user];
    if (g.empty())
        throw std::invalid_argument("coop_effective_gain: user has no serving links");

    if (coop.mode == CombiningMode::power_sum)
    {
        double sum = 0.0;
        for (double v : g)
            sum += v;
        return sum;
    }

    if (user >= coop.mean_gains.size() || coop.mean_gains[user].size() != g.size())
        throw std::invalid_argument("coop_effective_gain: coherent mode needs the mean of every link");
    const std::vector<double>& mean = coop.mean_gains[user];
    double total_mean = 0.0;
    for (double v : mean)
        total_mean += v;
    for (std::size_t k = 0; k < g.size(); ++k)
    {
        if (mean[k] > 0.0)
            return g[k] * (total_mean / mean[k]);
    }
    throw std::invalid_argument("coop_effective_gain: user has no serving links");
}

double coop_power_share(std::size_t num_transmitters, CoopBudget budget)
{
    if (num_transmitters == 0)
        throw std::invalid_argument("coop_power_share: no transmitters");
    return budget == CoopBudget::shared ? 1.0 / static_cast<double>(num_transmitters) : 1.0;
}

RateVector rate_coop_noma(const CoopCluster& coop, const PowerAllocation& alloc, CoopBudget budget,
                          double bandwidth)
{
    if (coop.num_users() != alloc.size())
        throw std::invalid_argument("rate_coop_noma: cluster and allocation sizes differ");
    std::vector<double> effective(coop.num_users());
    for (std::size_t i = 0; i < coop.num_users(); ++i)
    {
        if (coop.gains[i].size() != coop.num_transmitters())
            throw std::invalid_argument("rate_coop_noma: every user needs one gain per transmitter");
        effective[i] = coop_effective_gain(coop, i);
    }
    const double share = coop_power_share(coop.num_transmitters(), budget);
    return rate_siso_noma(order_by_gain(effective, bandwidth), alloc.with_budget(alloc.budget() * share));
}

} // namespace noma
