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

// Fading scenarios the trial engine can run.
//
// A scenario turns (seed, trial, budget) into one rate per "slot" (a user in
// a fixed, scenario-defined order). It offers two routes to the same numbers:
//
//  - trial_rates: one trial through realize_links and the rate operations.
//    This is the reference.
//  - fill_block: many trials at once. It emits only the SINR terms
//    (signal, interference) per slot; the engine turns them into rates with
//    the batch kernels.
//
// Both routes see bit-identical channel gains; they differ only in the log
// implementation, so their rates agree to a few ulp.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "noma/allocation.hpp"
#include "noma/channel.hpp"
#include "noma/rates.hpp"
#include "noma/simd/kernels.hpp"

namespace noma
{

/// Per-worker buffers for fill_block. Rows are slots, columns are trials.
class BlockTerms
{
  public:
    void reset(std::size_t slots, std::size_t count);

    std::size_t slots() const noexcept { return slots_; }
    std::size_t count() const noexcept { return count_; }

    std::span<double> signal(std::size_t slot) { return {signal_.data() + slot * count_, count_}; }
    std::span<double> interference(std::size_t slot) { return {interference_.data() + slot * count_, count_}; }

    /// Link gains of the block, sized by the scenario.
    std::vector<double> gains;
    /// Per-trial scratch for the scenario.
    std::vector<double> scratch;
    std::vector<std::size_t> ids;

  private:
    std::size_t slots_ = 0;
    std::size_t count_ = 0;
    std::vector<double> signal_;
    std::vector<double> interference_;
};

class Scenario
{
  public:
    virtual ~Scenario() = default;

    virtual std::string_view name() const = 0;
    virtual std::size_t num_slots() const = 0;
    virtual double bandwidth() const { return 1.0; }

    virtual RateVector trial_rates(std::uint64_t seed, std::uint64_t trial, double budget) const = 0;

    virtual void fill_block(std::uint64_t seed, std::uint64_t first_trial, std::size_t count, double budget,
                            BlockTerms& terms, const simd::KernelTable& kernels) const = 0;
};

/// m users behind one single-antenna transmitter. Slots: canonical order.
struct SisoParams
{
    std::size_t m = 1;
    double ratio = 2.0;
    IniMode ini_mode = IniMode::own_channel;
    SicConstraint sic;
    double mean_gain = 1.0;
    std::vector<double> user_scale; // per-user path-loss factor; empty means all ones
    double bandwidth = 1.0;
};

/// One cluster per beam, users per cluster m. Slots: cluster major, canonical within a cluster.
struct MimoParams
{
    std::size_t clusters = 2;
    std::size_t m = 2;
    double ratio = 2.0;
    double leakage = 0.1;
    double cross_gain = 1.0; // mean scale of a beam towards another cluster's users
    IniMode ini_mode = IniMode::own_channel;
    SicConstraint sic;
    double mean_gain = 1.0;
    double bandwidth = 1.0;
};

/// num_bs cells of m users each: one shared edge user plus m - 1 centre users
/// per cell. Each BS radiates budget / num_bs.
/// Slots: edge user first, then BS major, canonical centre order.
struct CompParams
{
    std::size_t num_bs = 2;
    std::size_t m = 3;
    double ratio = 2.0;
    double cross_gain = 0.1; // mean scale of a BS towards another cell's centre users
    double mean_gain = 1.0;
    double bandwidth = 1.0;
};

/// K transmitters jointly serving M users. Slots: canonical order.
struct CoopParams
{
    std::size_t transmitters = 1;
    std::size_t users = 1;
    double ratio = 2.0;
    CombiningMode combining = CombiningMode::power_sum;
    CoopBudget budget = CoopBudget::shared;
    SicConstraint sic;
    double mean_gain = 1.0;
    double bandwidth = 1.0;
};

/// Each factory validates its parameters and throws std::invalid_argument.
std::unique_ptr<Scenario> make_siso_scenario(SisoParams params);
std::unique_ptr<Scenario> make_mimo_scenario(MimoParams params);
std::unique_ptr<Scenario> make_comp_scenario(CompParams params);
std::unique_ptr<Scenario> make_coop_scenario(CoopParams params);

} // namespace noma
