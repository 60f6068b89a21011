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

#include <array>
#include <bit>
#include <cstdint>

namespace noma
{

// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw; SC'11).
// Every random word in the simulator is a pure function of (key, counter),
// which is what makes trial results independent of scheduling.

struct PhiloxKey
{
    std::uint32_t lo = 0;
    std::uint32_t hi = 0;

    static constexpr PhiloxKey from_seed(std::uint64_t seed)
    {
        return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    }
};

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxBlock = std::array<std::uint32_t, 4>;

inline constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
inline constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
inline constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;
inline constexpr int kPhiloxRounds = 10;

constexpr PhiloxBlock philox4x32(PhiloxCounter ctr, PhiloxKey key)
{
    for (int round = 0; round < kPhiloxRounds; ++round)
    {
        if (round != 0)
        {
            key.lo += kPhiloxW0;
            key.hi += kPhiloxW1;
        }
        const std::uint64_t p0 = std::uint64_t{kPhiloxM0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kPhiloxM1} * ctr[2];
        ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key.lo,
               static_cast<std::uint32_t>(p1),
               static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key.hi,
               static_cast<std::uint32_t>(p0)};
    }
    return ctr;
}

// Substream domains occupy the last counter word so that different consumers of
// the same seed never share a counter.
enum class StreamDomain : std::uint32_t
{
    fading = 0,    // draw_fading(cfg, stream_id)
    link = 1,      // realize_links: (trial, link index)
    bootstrap = 2, // bootstrap resampling: (draw index, resample index)
};

/// Uniform double in (0, 1) from two 32-bit words: 52 random mantissa bits,
/// centred in their bin so neither endpoint is reachable.
inline double unit_open(std::uint32_t w0, std::uint32_t w1)
{
    const std::uint64_t bits = ((std::uint64_t{w0} << 32) | w1) >> 12;
    // bits | 2^52 reinterpreted is exactly 2^52 + bits.
    const double as_int = std::bit_cast<double>(bits | 0x4330000000000000ull) - 0x1p52;
    return (as_int + 0.5) * 0x1p-52;
}

} // namespace noma
