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

#include "noma/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace noma
{

FadingConfig::FadingConfig(double mean_gain, std::uint64_t seed, FadingModel model)
    : mean_gain_(mean_gain), seed_(seed), model_(model)
{
    if (!(std::isfinite(mean_gain) && mean_gain > 0.0))
        throw std::invalid_argument("FadingConfig: mean gain must be finite and > 0");
}

TopologyConfig::TopologyConfig(std::size_t num_transmitters, std::size_t num_users, double scale)
    : TopologyConfig(num_transmitters, num_users, std::vector<double>(num_transmitters * num_users, scale))
{
}

TopologyConfig::TopologyConfig(std::size_t num_transmitters, std::size_t num_users,
                               std::vector<double> cross_gain_scale)
    : num_transmitters_(num_transmitters), num_users_(num_users), scale_(std::move(cross_gain_scale))
{
    validate();
}

void TopologyConfig::set_scale(std::size_t k, std::size_t i, double value)
{
    if (k >= num_transmitters_ || i >= num_users_)
        throw std::invalid_argument("TopologyConfig: link index out of range");
    if (!(std::isfinite(value) && value >= 0.0))
        throw std::invalid_argument("TopologyConfig: scale factors must be finite and >= 0");
    scale_[k * num_users_ + i] = value;
}

void TopologyConfig::validate() const
{
    if (num_transmitters_ < 1 || num_users_ < 1)
        throw std::invalid_argument("TopologyConfig: need at least one transmitter and one user");
    if (num_transmitters_ * num_users_ > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("TopologyConfig: link count exceeds the 32-bit counter word");
    if (scale_.size() != num_transmitters_ * num_users_)
        throw std::invalid_argument("TopologyConfig: expected " + std::to_string(num_transmitters_ * num_users_) +
                                    " scale factors, got " + std::to_string(scale_.size()));
    for (double s : scale_)
        if (!(std::isfinite(s) && s >= 0.0))
            throw std::invalid_argument("TopologyConfig: scale factors must be finite and >= 0");
}

double draw_fading(const FadingConfig& cfg, std::uint64_t stream_id)
{
    const PhiloxBlock block =
        philox4x32({static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32), 0u,
                    static_cast<std::uint32_t>(StreamDomain::fading)},
                   cfg.key());
    return simd::exponential_from_block(block, cfg.mean_gain());
}

LinkMatrix realize_links(const TopologyConfig& topo, const FadingConfig& cfg, std::uint64_t trial)
{
    LinkMatrix links(topo.num_transmitters(), topo.num_users());
    const PhiloxKey key = cfg.key();
    for (std::size_t k = 0; k < topo.num_transmitters(); ++k)
    {
        for (std::size_t i = 0; i < topo.num_users(); ++i)
        {
            const PhiloxBlock block = philox4x32({static_cast<std::uint32_t>(trial),
                                                  static_cast<std::uint32_t>(trial >> 32), topo.link_index(k, i),
                                                  static_cast<std::uint32_t>(StreamDomain::link)},
                                                 key);
            const double g = simd::exponential_from_block(block, cfg.mean_gain() * topo.scale(k, i));
            links.at(k, i) = LinkGain{g, g};
        }
    }
    return links;
}

void realize_link_block(const TopologyConfig& topo, const FadingConfig& cfg, std::uint64_t first_trial,
                        std::size_t count, std::span<double> gains, const simd::KernelTable& kernels)
{
    if (gains.size() < topo.num_links() * count)
        throw std::invalid_argument("realize_link_block: gain buffer too small");
    const PhiloxKey key = cfg.key();
    for (std::size_t k = 0; k < topo.num_transmitters(); ++k)
    {
        for (std::size_t i = 0; i < topo.num_users(); ++i)
        {
            const std::uint32_t link = topo.link_index(k, i);
            kernels.exponential_fill(key, first_trial, link, static_cast<std::uint32_t>(StreamDomain::link),
                                     cfg.mean_gain() * topo.scale(k, i), gains.subspan(link * count, count));
        }
    }
}

} // namespace noma
