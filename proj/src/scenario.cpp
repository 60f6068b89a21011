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

#include "noma/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

// The block paths below repeat the arithmetic of the rate operations term for
// term and in the same order. Keep them in step: the reference-equivalence
// tests compare both routes per trial.

namespace noma
{

void BlockTerms::reset(std::size_t slots, std::size_t count)
{
    slots_ = slots;
    count_ = count;
    signal_.resize(slots * count);
    interference_.resize(slots * count);
}

namespace
{

void require(bool ok, const char* message)
{
    if (!ok)
        throw std::invalid_argument(message);
}

void check_common(double ratio, double mean_gain, double bandwidth)
{
    require(std::isfinite(ratio) && ratio > 1.0, "scenario: power ratio must be > 1");
    require(std::isfinite(mean_gain) && mean_gain > 0.0, "scenario: mean gain must be finite and > 0");
    require(std::isfinite(bandwidth) && bandwidth > 0.0, "scenario: bandwidth must be finite and > 0");
}

void check_sic(const SicConstraint& sic)
{
    require(std::isfinite(sic.delta) && sic.delta >= 0.0, "scenario: SIC gap must be finite and >= 0");
}

// Zero gap means ideal SIC hardware: nothing to check.
bool sic_active(const SicConstraint& sic) { return sic.delta > 0.0; }

// Users whose SIC chain fails get rate zero.
void apply_sic(RateVector& rates, std::span<const double> ordered_gammas, const PowerAllocation& alloc,
               const SicConstraint& sic)
{
    if (!sic_active(sic))
        return;
    const std::vector<double> coeff = sic_gap_coefficients(alloc, sic.mode);
    for (std::size_t i = 0; i < rates.size(); ++i)
        if (ordered_gammas[i] * coeff[i] < sic.delta)
            rates.values[i] = 0.0;
}

void sort_descending(std::span<double> values) { std::sort(values.begin(), values.end(), std::greater<>{}); }

// Single-cluster SINR terms of one trial, canonical order, written to column t.
struct ClusterTermWriter
{
    std::span<const double> powers;
    std::span<const double> sic_coeff; // empty when SIC is ideal
    double delta = 0.0;
    IniMode mode = IniMode::own_channel;

    void write(std::span<const double> ordered_gammas, BlockTerms& terms, std::size_t first_slot,
               std::size_t t) const
    {
        double weaker_power = 0.0;
        double literal_interf = 0.0;
        for (std::size_t i = 0; i < ordered_gammas.size(); ++i)
        {
            const double gamma = ordered_gammas[i];
            const double p = powers[i];
            double signal = p * gamma;
            if (!sic_coeff.empty() && gamma * sic_coeff[i] < delta)
                signal = 0.0;
            terms.signal(first_slot + i)[t] = signal;
            terms.interference(first_slot + i)[t] =
                mode == IniMode::own_channel ? weaker_power * gamma : literal_interf;
            weaker_power += p;
            literal_interf += p * gamma;
        }
    }
};

std::vector<double> powers_of(const PowerAllocation& alloc)
{
    std::vector<double> p(alloc.size());
    for (std::size_t i = 0; i < alloc.size(); ++i)
        p[i] = alloc.power(i);
    return p;
}

std::vector<double> sic_coefficients_if_active(const PowerAllocation& alloc, const SicConstraint& sic)
{
    return sic_active(sic) ? sic_gap_coefficients(alloc, sic.mode) : std::vector<double>{};
}

// ---------------------------------------------------------------------------

class SisoScenario final : public Scenario
{
  public:
    explicit SisoScenario(SisoParams p)
        : params_(std::move(p)), topo_(make_topology(params_)), fractions_(geometric_fractions(params_.m, params_.ratio))
    {
    }

    std::string_view name() const override { return "siso"; }
    std::size_t num_slots() const override { return params_.m; }
    double bandwidth() const override { return params_.bandwidth; }

    RateVector trial_rates(std::uint64_t seed, std::uint64_t trial, double budget) const override
    {
        const LinkMatrix links = realize_links(topo_, FadingConfig(params_.mean_gain, seed), trial);
        std::vector<double> gammas(params_.m);
        for (std::size_t i = 0; i < params_.m; ++i)
            gammas[i] = links.at(0, i).gamma;
        const OrderedCluster cluster = order_by_gain(gammas, params_.bandwidth);
        const PowerAllocation alloc(fractions_, budget);
        RateVector rates = rate_siso_noma(cluster, alloc, params_.ini_mode);
        apply_sic(rates, cluster.gammas(), alloc, params_.sic);
        return rates;
    }

    void fill_block(std::uint64_t seed, std::uint64_t first_trial, std::size_t count, double budget,
                    BlockTerms& terms, const simd::KernelTable& kernels) const override
    {
        const std::size_t m = params_.m;
        terms.reset(m, count);
        terms.gains.resize(m * count);
        realize_link_block(topo_, FadingConfig(params_.mean_gain, seed), first_trial, count, terms.gains, kernels);

        const PowerAllocation alloc(fractions_, budget);
        const std::vector<double> powers = powers_of(alloc);
        const std::vector<double> coeff = sic_coefficients_if_active(alloc, params_.sic);
        const ClusterTermWriter writer{powers, coeff, params_.sic.delta, params_.ini_mode};

        terms.scratch.resize(m);
        for (std::size_t t = 0; t < count; ++t)
        {
            for (std::size_t i = 0; i < m; ++i)
                terms.scratch[i] = terms.gains[i * count + t];
            sort_descending(terms.scratch);
            writer.write(terms.scratch, terms, 0, t);
        }
    }

  private:
    static TopologyConfig make_topology(const SisoParams& p)
    {
        require(p.m >= 1, "siso: cluster size must be >= 1");
        check_common(p.ratio, p.mean_gain, p.bandwidth);
        check_sic(p.sic);
        if (p.user_scale.empty())
            return TopologyConfig(1, p.m, 1.0);
        require(p.user_scale.size() == p.m, "siso: user_scale needs one entry per user");
        return TopologyConfig(1, p.m, p.user_scale);
    }

    SisoParams params_;
    TopologyConfig topo_;
    std::vector<double> fractions_;
};

// ---------------------------------------------------------------------------

class MimoScenario final : public Scenario
{
  public:
    explicit MimoScenario(MimoParams p)
        : params_(p), topo_(make_topology(params_)), fractions_(geometric_fractions(params_.m, params_.ratio))
    {
    }

    std::string_view name() const override { return "mimo"; }
    std::size_t num_slots() const override { return params_.clusters * params_.m; }
    double bandwidth() const override { return params_.bandwidth; }

    RateVector trial_rates(std::uint64_t seed, std::uint64_t trial, double budget) const override
    {
        const std::size_t n = params_.clusters;
        const std::size_t m = params_.m;
        const LinkMatrix links = realize_links(topo_, FadingConfig(params_.mean_gain, seed), trial);
        const double cluster_power = budget / static_cast<double>(n);

        std::vector<MimoCluster> clusters(n);
        for (std::size_t c = 0; c < n; ++c)
        {
            MimoCluster& cl = clusters[c];
            cl.power = cluster_power;
            cl.beam_gains.assign(m, std::vector<double>(n));
            for (std::size_t q = 0; q < m; ++q)
                for (std::size_t b = 0; b < n; ++b)
                    cl.beam_gains[q][b] = links.at(b, c * m + q).gain_sq;
            cl.head = 0;
            for (std::size_t q = 1; q < m; ++q)
                if (cl.beam_gains[q][c] > cl.beam_gains[cl.head][c])
                    cl.head = q;
        }
        const std::vector<std::vector<double>> ici = zf_residual_ici(clusters, params_.leakage);
        const PowerAllocation alloc(fractions_, cluster_power);
        const std::vector<PowerAllocation> allocs(n, alloc);
        const std::vector<RateVector> per_cluster = rate_mimo_noma(clusters, ici, allocs, params_.ini_mode,
                                                                   params_.bandwidth);
        RateVector out;
        out.values.reserve(n * m);
        std::vector<double> gammas(m);
        for (std::size_t c = 0; c < n; ++c)
        {
            RateVector r = per_cluster[c];
            for (std::size_t q = 0; q < m; ++q)
                gammas[q] = clusters[c].beam_gains[q][c] / (ici[c][q] + 1.0);
            apply_sic(r, order_by_gain(gammas).gammas(), alloc, params_.sic);
            out.values.insert(out.values.end(), r.values.begin(), r.values.end());
        }
        return out;
    }

    void fill_block(std::uint64_t seed, std::uint64_t first_trial, std::size_t count, double budget,
                    BlockTerms& terms, const simd::KernelTable& kernels) const override
    {
        const std::size_t n = params_.clusters;
        const std::size_t m = params_.m;
        terms.reset(n * m, count);
        terms.gains.resize(topo_.num_links() * count);
        realize_link_block(topo_, FadingConfig(params_.mean_gain, seed), first_trial, count, terms.gains, kernels);

        const double cluster_power = budget / static_cast<double>(n);
        const PowerAllocation alloc(fractions_, cluster_power);
        const std::vector<double> powers = powers_of(alloc);
        const std::vector<double> coeff = sic_coefficients_if_active(alloc, params_.sic);
        const ClusterTermWriter writer{powers, coeff, params_.sic.delta, params_.ini_mode};
        const double leakage = params_.leakage;

        auto gain = [&](std::size_t beam, std::size_t user, std::size_t t) {
            return terms.gains[topo_.link_index(beam, user) * count + t];
        };

        terms.scratch.resize(m);
        for (std::size_t t = 0; t < count; ++t)
        {
            for (std::size_t c = 0; c < n; ++c)
            {
                std::size_t head = 0;
                for (std::size_t q = 1; q < m; ++q)
                    if (gain(c, c * m + q, t) > gain(c, c * m + head, t))
                        head = q;
                for (std::size_t q = 0; q < m; ++q)
                {
                    const std::size_t u = c * m + q;
                    double ici = 0.0;
                    if (q != head)
                    {
                        for (std::size_t b = 0; b < n; ++b)
                            if (b != c)
                                ici += cluster_power * gain(b, u, t) * leakage;
                    }
                    terms.scratch[q] = gain(c, u, t) / (ici + 1.0);
                }
                sort_descending(terms.scratch);
                writer.write(terms.scratch, terms, c * m, t);
            }
        }
    }

  private:
    static TopologyConfig make_topology(const MimoParams& p)
    {
        require(p.clusters >= 1, "mimo: need at least one cluster");
        require(p.m >= 1, "mimo: cluster size must be >= 1");
        require(p.leakage >= 0.0 && p.leakage <= 1.0, "mimo: leakage must lie in [0, 1]");
        require(std::isfinite(p.cross_gain) && p.cross_gain >= 0.0, "mimo: cross gain must be finite and >= 0");
        check_common(p.ratio, p.mean_gain, p.bandwidth);
        check_sic(p.sic);
        TopologyConfig topo(p.clusters, p.clusters * p.m, 1.0);
        for (std::size_t b = 0; b < p.clusters; ++b)
            for (std::size_t u = 0; u < p.clusters * p.m; ++u)
                if (u / p.m != b)
                    topo.set_scale(b, u, p.cross_gain);
        return topo;
    }

    MimoParams params_;
    TopologyConfig topo_;
    std::vector<double> fractions_;
};

// ---------------------------------------------------------------------------

class CompScenario final : public Scenario
{
  public:
    explicit CompScenario(CompParams p)
        : params_(p), topo_(make_topology(params_)), fractions_(geometric_fractions(params_.m, params_.ratio))
    {
    }

    std::string_view name() const override { return "comp"; }
    std::size_t num_slots() const override { return 1 + params_.num_bs * centres(); }
    double bandwidth() const override { return params_.bandwidth; }

    RateVector trial_rates(std::uint64_t seed, std::uint64_t trial, double budget) const override
    {
        const std::size_t nb = params_.num_bs;
        const std::size_t nc = centres();
        const LinkMatrix links = realize_links(topo_, FadingConfig(params_.mean_gain, seed), trial);

        CompTopology topo;
        topo.cells.resize(nb);
        std::vector<double> own(nc);
        for (std::size_t b = 0; b < nb; ++b)
        {
            CompCell& cell = topo.cells[b];
            cell.edge_gamma = links.at(b, 0).gamma;
            for (std::size_t j = 0; j < nc; ++j)
                own[j] = links.at(b, centre_user(b, j)).gamma;
            if (nc == 0)
                continue;
            const OrderedCluster ordered = order_by_gain(own);
            cell.centre_gammas.assign(ordered.gammas().begin(), ordered.gammas().end());
            cell.cross_gammas.assign(nc, std::vector<double>(nb));
            for (std::size_t c = 0; c < nc; ++c)
                for (std::size_t mm = 0; mm < nb; ++mm)
                    cell.cross_gammas[c][mm] = links.at(mm, centre_user(b, ordered.original_id(c))).gamma;
        }
        const std::vector<PowerAllocation> allocs(nb, PowerAllocation(fractions_, bs_budget(budget)));

        RateVector out;
        out.values.reserve(num_slots());
        out.values.push_back(params_.bandwidth * rate_comp_edge(topo, allocs));
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t c = 0; c < nc; ++c)
                out.values.push_back(params_.bandwidth * rate_comp_center(topo, allocs, b, c));
        return out;
    }

    void fill_block(std::uint64_t seed, std::uint64_t first_trial, std::size_t count, double budget,
                    BlockTerms& terms, const simd::KernelTable& kernels) const override
    {
        const std::size_t nb = params_.num_bs;
        const std::size_t nc = centres();
        terms.reset(num_slots(), count);
        terms.gains.resize(topo_.num_links() * count);
        realize_link_block(topo_, FadingConfig(params_.mean_gain, seed), first_trial, count, terms.gains, kernels);

        const PowerAllocation alloc(fractions_, bs_budget(budget));
        const std::vector<double> powers = powers_of(alloc);
        const double edge_power = powers[nc];
        double centre_total = 0.0;
        for (std::size_t j = 0; j < nc; ++j)
            centre_total += alloc.power(j);

        auto gain = [&](std::size_t bs, std::size_t user, std::size_t t) {
            return terms.gains[topo_.link_index(bs, user) * count + t];
        };

        terms.ids.resize(nc);
        for (std::size_t t = 0; t < count; ++t)
        {
            double signal = 0.0;
            double interference = 0.0;
            for (std::size_t b = 0; b < nb; ++b)
            {
                const double gamma = gain(b, 0, t);
                signal += edge_power * gamma;
                interference += centre_total * gamma;
            }
            terms.signal(0)[t] = signal;
            terms.interference(0)[t] = interference;

            for (std::size_t b = 0; b < nb; ++b)
            {
                std::iota(terms.ids.begin(), terms.ids.end(), std::size_t{0});
                std::stable_sort(terms.ids.begin(), terms.ids.end(), [&](std::size_t x, std::size_t y) {
                    return gain(b, centre_user(b, x), t) > gain(b, centre_user(b, y), t);
                });
                double stronger = 0.0;
                for (std::size_t c = 0; c < nc; ++c)
                {
                    const std::size_t u = centre_user(b, terms.ids[c]);
                    const double gamma = gain(b, u, t);
                    double inter = 0.0;
                    for (std::size_t mm = 0; mm < nb; ++mm)
                        if (mm != b)
                            inter += centre_total * gain(mm, u, t);
                    const std::size_t slot = 1 + b * nc + c;
                    terms.signal(slot)[t] = alloc.power(c) * gamma;
                    terms.interference(slot)[t] = stronger * gamma + inter;
                    stronger += alloc.power(c);
                }
            }
        }
    }

  private:
    std::size_t centres() const { return params_.m - 1; }
    std::size_t centre_user(std::size_t bs, std::size_t j) const { return 1 + bs * centres() + j; }
    double bs_budget(double budget) const { return budget / static_cast<double>(params_.num_bs); }

    static TopologyConfig make_topology(const CompParams& p)
    {
        require(p.num_bs >= 1, "comp: need at least one BS");
        require(p.m >= 1, "comp: cluster size must be >= 1");
        require(std::isfinite(p.cross_gain) && p.cross_gain >= 0.0, "comp: cross gain must be finite and >= 0");
        check_common(p.ratio, p.mean_gain, p.bandwidth);
        const std::size_t nc = p.m - 1;
        TopologyConfig topo(p.num_bs, 1 + p.num_bs * nc, 1.0);
        for (std::size_t b = 0; b < p.num_bs; ++b)
            for (std::size_t u = 1; u < 1 + p.num_bs * nc; ++u)
                if ((u - 1) / nc != b)
                    topo.set_scale(b, u, p.cross_gain);
        return topo;
    }

    CompParams params_;
    TopologyConfig topo_;
    std::vector<double> fractions_;
};

// ---------------------------------------------------------------------------

class CoopScenario final : public Scenario
{
  public:
    explicit CoopScenario(CoopParams p)
        : params_(p), topo_(make_topology(params_)), fractions_(geometric_fractions(params_.users, params_.ratio))
    {
        // Coherent combining rescales the first link's draw to the total mean,
        // summed the way coop_effective_gain sums it.
        double total_mean = 0.0;
        for (std::size_t k = 0; k < params_.transmitters; ++k)
            total_mean += params_.mean_gain;
        coherent_factor_ = total_mean / params_.mean_gain;
    }

    std::string_view name() const override { return "coop"; }
    std::size_t num_slots() const override { return params_.users; }
    double bandwidth() const override { return params_.bandwidth; }

    RateVector trial_rates(std::uint64_t seed, std::uint64_t trial, double budget) const override
    {
        const std::size_t k_tx = params_.transmitters;
        const std::size_t m = params_.users;
        const LinkMatrix links = realize_links(topo_, FadingConfig(params_.mean_gain, seed), trial);
        CoopCluster coop;
        coop.mode = params_.combining;
        coop.gains.assign(m, std::vector<double>(k_tx));
        coop.mean_gains.assign(m, std::vector<double>(k_tx, params_.mean_gain));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < k_tx; ++k)
                coop.gains[i][k] = links.at(k, i).gain_sq;

        const PowerAllocation alloc(fractions_, budget);
        RateVector rates = rate_coop_noma(coop, alloc, params_.budget, params_.bandwidth);
        if (sic_active(params_.sic))
        {
            std::vector<double> effective(m);
            for (std::size_t i = 0; i < m; ++i)
                effective[i] = coop_effective_gain(coop, i);
            const double share = coop_power_share(k_tx, params_.budget);
            apply_sic(rates, order_by_gain(effective).gammas(), alloc.with_budget(alloc.budget() * share),
                      params_.sic);
        }
        return rates;
    }

    void fill_block(std::uint64_t seed, std::uint64_t first_trial, std::size_t count, double budget,
                    BlockTerms& terms, const simd::KernelTable& kernels) const override
    {
        const std::size_t k_tx = params_.transmitters;
        const std::size_t m = params_.users;
        terms.reset(m, count);
        terms.gains.resize(topo_.num_links() * count);
        realize_link_block(topo_, FadingConfig(params_.mean_gain, seed), first_trial, count, terms.gains, kernels);

        const PowerAllocation base(fractions_, budget);
        const PowerAllocation alloc = base.with_budget(base.budget() * coop_power_share(k_tx, params_.budget));
        const std::vector<double> powers = powers_of(alloc);
        const std::vector<double> coeff = sic_coefficients_if_active(alloc, params_.sic);
        const ClusterTermWriter writer{powers, coeff, params_.sic.delta, IniMode::own_channel};

        terms.scratch.resize(m);
        for (std::size_t t = 0; t < count; ++t)
        {
            for (std::size_t i = 0; i < m; ++i)
            {
                if (params_.combining == CombiningMode::power_sum)
                {
                    double sum = 0.0;
                    for (std::size_t k = 0; k < k_tx; ++k)
                        sum += terms.gains[topo_.link_index(k, i) * count + t];
                    terms.scratch[i] = sum;
                }
                else
                {
                    terms.scratch[i] = terms.gains[topo_.link_index(0, i) * count + t] * coherent_factor_;
                }
            }
            sort_descending(terms.scratch);
            writer.write(terms.scratch, terms, 0, t);
        }
    }

  private:
    static TopologyConfig make_topology(const CoopParams& p)
    {
        require(p.transmitters >= 1, "coop: need at least one transmitter");
        require(p.users >= 1, "coop: need at least one user");
        check_common(p.ratio, p.mean_gain, p.bandwidth);
        check_sic(p.sic);
        return TopologyConfig(p.transmitters, p.users, 1.0);
    }

    CoopParams params_;
    TopologyConfig topo_;
    std::vector<double> fractions_;
    double coherent_factor_ = 1.0;
};

} // namespace

std::unique_ptr<Scenario> make_siso_scenario(SisoParams params)
{
    return std::make_unique<SisoScenario>(std::move(params));
}

std::unique_ptr<Scenario> make_mimo_scenario(MimoParams params) { return std::make_unique<MimoScenario>(params); }

std::unique_ptr<Scenario> make_comp_scenario(CompParams params) { return std::make_unique<CompScenario>(params); }

std::unique_ptr<Scenario> make_coop_scenario(CoopParams params) { return std::make_unique<CoopScenario>(params); }

} // namespace noma
