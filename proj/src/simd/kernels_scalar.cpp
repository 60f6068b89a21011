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

#include <bit>
#include <cassert>

#include "log_constants.hpp"
#include "noma/simd/kernels.hpp"

namespace noma::simd
{

using namespace detail;

double ln(double x)
{
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
    double e = std::bit_cast<double>((bits >> 52) | kMagic52Bits) - 0x1p52 - kExponentBias;
    double m = std::bit_cast<double>((bits & kMantissaMask) | kOneBits);
    if (m > kSqrt2)
    {
        m = m * 0.5;
        e = e + 1.0;
    }
    const double s = (m - 1.0) / (m + 1.0);
    const double z = s * s;
    double p = kLogPoly[kLogTerms - 1];
    for (int k = kLogTerms - 2; k >= 0; --k)
        p = p * z + kLogPoly[k];
    const double ln_m = (s + s) + s * z * p;
    return e * kLn2Hi + (ln_m + e * kLn2Lo);
}

double ln1p(double x)
{
    const double u = 1.0 + x;
    // (x - (u - 1)) is the rounding error of 1 + x; dividing by u turns it into
    // a first-order correction of ln(u).
    return ln(u) + (x - (u - 1.0)) / u;
}

double exponential_from_block(const PhiloxBlock& block, double mean)
{
    return mean * -ln(unit_open(block[0], block[1]));
}

namespace
{

void exponential_fill_scalar(PhiloxKey key, std::uint64_t first_trial, std::uint32_t link,
                             std::uint32_t domain, double mean, std::span<double> out)
{
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        const std::uint64_t t = first_trial + j;
        const PhiloxBlock block = philox4x32(
            {static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32), link, domain}, key);
        out[j] = exponential_from_block(block, mean);
    }
}

void shannon_rate_scalar(std::span<const double> signal, std::span<const double> interference,
                         double bandwidth, std::span<double> out)
{
    assert(signal.size() == out.size() && interference.size() == out.size());
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        const double sinr = signal[j] / (interference[j] + 1.0);
        out[j] = bandwidth * (ln1p(sinr) * kInvLn2);
    }
}

void min_accumulate_scalar(std::span<double> acc, std::span<const double> x)
{
    assert(acc.size() == x.size());
    for (std::size_t j = 0; j < acc.size(); ++j)
        acc[j] = x[j] < acc[j] ? x[j] : acc[j];
}

void add_accumulate_scalar(std::span<double> acc, std::span<const double> x)
{
    assert(acc.size() == x.size());
    for (std::size_t j = 0; j < acc.size(); ++j)
        acc[j] = acc[j] + x[j];
}

} // namespace

const KernelTable& scalar_kernels()
{
    static const KernelTable table{
        Isa::scalar,
        exponential_fill_scalar,
        shannon_rate_scalar,
        min_accumulate_scalar,
        add_accumulate_scalar,
    };
    return table;
}

} // namespace noma::simd
