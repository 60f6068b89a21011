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

// Batch kernels behind the Monte Carlo hot loop.
//
// Each kernel has a portable scalar reference and, where the target allows, an
// AVX2 variant. The variants perform the same IEEE operations in the same
// order (no FMA contraction), so their outputs are bit-identical to the scalar
// reference; the test suite checks this exactly. The active table is chosen
// once at first use from the CPU and can be forced with NOMA_SIMD=scalar|avx2.

#include <cstdint>
#include <span>
#include <string_view>

#include "noma/philox.hpp"

namespace noma::simd
{

enum class Isa
{
    scalar,
    avx2,
};

std::string_view isa_name(Isa isa);

struct KernelTable
{
    Isa isa;

    // out[j] = mean * -ln(U), U = unit_open of the Philox block at counter
    // {t, t >> 32, link, domain} with t = first_trial + j.
    void (*exponential_fill)(PhiloxKey key, std::uint64_t first_trial, std::uint32_t link,
                             std::uint32_t domain, double mean, std::span<double> out);

    // out[j] = bandwidth * log2(1 + signal[j] / (interference[j] + 1)).
    // Domain: signal, interference finite and >= 0.
    void (*shannon_rate)(std::span<const double> signal, std::span<const double> interference,
                         double bandwidth, std::span<double> out);

    // acc[j] = x[j] < acc[j] ? x[j] : acc[j]
    void (*min_accumulate)(std::span<double> acc, std::span<const double> x);

    // acc[j] += x[j]
    void (*add_accumulate)(std::span<double> acc, std::span<const double> x);
};

const KernelTable& scalar_kernels();

/// True when the variant was compiled in and the running CPU can execute it.
bool is_supported(Isa isa);

/// Throws std::runtime_error when the variant is unavailable.
const KernelTable& kernels_for(Isa isa);

/// Best supported table, or the one named by NOMA_SIMD.
const KernelTable& active_kernels();

// Scalar reference math, shared with code that draws single samples so that a
// lone draw is bit-identical to the same draw taken inside a batch.

/// Natural log for positive normal finite x.
double ln(double x);

/// ln(1 + x) for finite x >= 0.
double ln1p(double x);

/// mean * -ln(unit_open(block[0], block[1]))
double exponential_from_block(const PhiloxBlock& block, double mean);

} // namespace noma::simd
