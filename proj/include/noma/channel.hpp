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

// Reproducible fading realizations.
//
// Only the channel power |h|^2 is modelled. Under Rayleigh fading it is
// exponential with mean Omega * scale(k, i), where scale carries path loss or
// geometry for the (transmitter k, user i) link. Noise plus inter-cluster
// interference is normalized to one, so the normalized SNR gamma equals |h|^2
// unless a scenario adds explicit interference on top.
//
// Sample (trial t, link k * M + i) is a pure function of (seed, t, k, M, i):
// no generator state exists, so any partition of trials over threads yields
// the same numbers.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "noma/philox.hpp"
#include "noma/simd/kernels.hpp"

namespace noma
{

enum class FadingModel
{
    rayleigh,
};

class FadingConfig
{
  public:
    /// Throws std::invalid_argument unless mean_gain is finite and > 0.
    explicit FadingConfig(double mean_gain = 1.0, std::uint64_t seed = 0,
                          FadingModel model = FadingModel::rayleigh);

    double mean_gain() const noexcept { return mean_gain_; }
    std::uint64_t seed() const noexcept { return seed_; }
    FadingModel model() const noexcept { return model_; }
    PhiloxKey key() const noexcept { return PhiloxKey::from_seed(seed_); }

    FadingConfig with_seed(std::uint64_t seed) const { return FadingConfig(mean_gain_, seed, model_); }

  private:
    double mean_gain_;
    std::uint64_t seed_;
    FadingModel model_;
};

struct LinkGain
{
    double gain_sq = 0.0; // |h|^2
    double gamma = 0.0;   // |h|^2 / (I + N)
};

/// gamma for a link whose receiver also sees `interference` on top of the unit noise floor.
inline double normalized_gamma(double gain_sq, double interference) { return gain_sq / (interference + 1.0); }

class TopologyConfig
{
  public:
    /// Every link gets the same scale factor.
    TopologyConfig(std::size_t num_transmitters, std::size_t num_users, double scale = 1.0);

    /// cross_gain_scale is row major: entry k * num_users + i.
    TopologyConfig(std::size_t num_transmitters, std::size_t num_users, std::vector<double> cross_gain_scale);

    std::size_t num_transmitters() const noexcept { return num_transmitters_; }
    std::size_t num_users() const noexcept { return num_users_; }
    std::size_t num_links() const noexcept { return num_transmitters_ * num_users_; }

    double scale(std::size_t k, std::size_t i) const { return scale_[k * num_users_ + i]; }
    void set_scale(std::size_t k, std::size_t i, double value);

    std::uint32_t link_index(std::size_t k, std::size_t i) const
    {
        return static_cast<std::uint32_t>(k * num_users_ + i);
    }

  private:
    void validate() const;

    std::size_t num_transmitters_;
    std::size_t num_users_;
    std::vector<double> scale_;
};

/// K x M matrix of link gains of one trial.
class LinkMatrix
{
  public:
    LinkMatrix(std::size_t num_transmitters, std::size_t num_users)
        : num_transmitters_(num_transmitters), num_users_(num_users), links_(num_transmitters * num_users)
    {
    }

    std::size_t num_transmitters() const noexcept { return num_transmitters_; }
    std::size_t num_users() const noexcept { return num_users_; }

    const LinkGain& at(std::size_t k, std::size_t i) const { return links_.at(k * num_users_ + i); }
    LinkGain& at(std::size_t k, std::size_t i) { return links_.at(k * num_users_ + i); }

  private:
    std::size_t num_transmitters_;
    std::size_t num_users_;
    std::vector<LinkGain> links_;
};

/// One exponential sample with mean cfg.mean_gain() for the given substream.
double draw_fading(const FadingConfig& cfg, std::uint64_t stream_id);

LinkMatrix realize_links(const TopologyConfig& topo, const FadingConfig& cfg, std::uint64_t trial);

/// Gains of trials [first_trial, first_trial + count) for every link, laid out
/// link major: gains[link * count + j]. Values are bit-identical to realize_links.
void realize_link_block(const TopologyConfig& topo, const FadingConfig& cfg, std::uint64_t first_trial,
                        std::size_t count, std::span<double> gains,
                        const simd::KernelTable& kernels = simd::active_kernels());

} // namespace noma
