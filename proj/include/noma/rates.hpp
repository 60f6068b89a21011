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

// Achievable rates under perfect SIC, for every transmission layout the
// simulator knows about. Everything is expressed at the SINR level with the
// noise floor normalized to one:
//
//   R = B log2(1 + S / (I + 1))
//
// where S is the desired received power and I collects the uncancelled
// same-cluster signals (INI) plus inter-cluster interference (ICI).

#include <cstddef>
#include <span>
#include <vector>

#include "noma/allocation.hpp"
#include "noma/cluster.hpp"

namespace noma
{

struct RateVector
{
    std::vector<double> values; // bit/s, or bit/s/Hz for unit bandwidth

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    double min() const;
    double sum() const;
};

/// B log2(1 + signal / (interference + 1)).
double shannon_rate(double signal, double interference, double bandwidth = 1.0);

// ---------------------------------------------------------------------------
// Single transmitter, single antenna.

enum class IniMode
{
    own_channel, // interference sum_{j<i} p_j gamma_i: every signal reaches user i over its own channel
    literal,     // interference sum_{j<i} p_j gamma_j, the interferers' channels
};

/// User i (canonical) cancels users i+1..m-1 and treats 0..i-1 as interference.
RateVector rate_siso_noma(const OrderedCluster& cluster, const PowerAllocation& alloc,
                          IniMode mode = IniMode::own_channel);

/// Equal orthogonal shares: R_i = (B/m) log2(1 + p_t gamma_i).
RateVector rate_oma_baseline(const OrderedCluster& cluster, double budget);

// ---------------------------------------------------------------------------
// Joint-transmission CoMP: a shared cell-edge user served by every BS, plus
// per-BS cell-centre users served by their own BS only.

struct CompCell
{
    double edge_gamma = 0.0;                     // this BS -> shared edge user
    std::vector<double> centre_gammas;           // own-cell centre users, canonical (strongest first)
    std::vector<std::vector<double>> cross_gammas; // [centre][bs]: interfering BS -> centre user; own entry ignored
};

struct CompTopology
{
    std::vector<CompCell> cells;

    std::size_t num_bs() const noexcept { return cells.size(); }
};

/// Allocation per BS covers its centre users in canonical order followed by the
/// edge user, which always carries the largest share.
/// Throws std::invalid_argument when sizes disagree or the topology has no BS.
double rate_comp_edge(const CompTopology& topo, std::span<const PowerAllocation> allocs);

/// Rate of centre user `centre` (canonical index within BS `bs`).
double rate_comp_center(const CompTopology& topo, std::span<const PowerAllocation> allocs, std::size_t bs,
                        std::size_t centre);

// ---------------------------------------------------------------------------
// MIMO-NOMA: one cluster per transmit antenna/beam. Zero-forcing nulls the
// other beams at each cluster head; other users keep a fraction `leakage` of
// the inter-beam interference.

struct MimoCluster
{
    std::vector<std::vector<double>> beam_gains; // [user][beam] gain_sq; beam index == cluster index
    std::size_t head = 0;                        // zero-forcing target within the cluster
    double power = 0.0;                          // power allocated to this cluster's beam
};

/// Residual ICI per cluster per user. Throws std::invalid_argument when a
/// head index is out of range, a user lacks a gain for some beam, or leakage
/// is outside [0, 1].
std::vector<std::vector<double>> zf_residual_ici(std::span<const MimoCluster> clusters, double leakage);

/// Per cluster: gamma_u = gain_sq / (ICI_u + 1), then the single-antenna
/// rule. allocs[c] must carry the cluster's power as its budget. Output is in
/// canonical order of each cluster.
std::vector<RateVector> rate_mimo_noma(std::span<const MimoCluster> clusters,
                                       const std::vector<std::vector<double>>& residual_ici,
                                       std::span<const PowerAllocation> allocs,
                                       IniMode mode = IniMode::own_channel, double bandwidth = 1.0);

// ---------------------------------------------------------------------------
// Cooperative large-scale NOMA: K transmitters jointly serve one cluster.

enum class CombiningMode
{
    power_sum, // received powers add; diversity order K under Rayleigh
    coherent,  // one combined channel, exponential with mean sum of the link means
};

enum class CoopBudget
{
    shared, // the K transmitters split p_t
    per_tx, // each transmitter radiates p_t
};

struct CoopCluster
{
    std::vector<std::vector<double>> gains;      // [user][tx] gain_sq
    std::vector<std::vector<double>> mean_gains; // [user][tx] link means; needed for coherent mode
    CombiningMode mode = CombiningMode::power_sum;

    std::size_t num_users() const noexcept { return gains.size(); }
    std::size_t num_transmitters() const noexcept { return gains.empty() ? 0 : gains.front().size(); }
};

/// power_sum: sum_k gain_sq[k]. coherent: the gain of the first transmitter
/// with a non-zero mean, rescaled to mean sum_k mean_gains[k] (still exponential).
/// Throws std::invalid_argument when the user has no serving link.
double coop_effective_gain(const CoopCluster& coop, std::size_t user);

/// Power share of each transmitter relative to the cluster budget.
double coop_power_share(std::size_t num_transmitters, CoopBudget budget);

/// Orders users by effective gain and applies the single-antenna rule with
/// per-transmitter powers p_i * coop_power_share(K, budget).
RateVector rate_coop_noma(const CoopCluster& coop, const PowerAllocation& alloc,
                          CoopBudget budget = CoopBudget::shared, double bandwidth = 1.0);

} // namespace noma
