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

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <vector>

#include "noma/philox.hpp"
#include "noma/simd/kernels.hpp"

namespace simd = noma::simd;

namespace
{

bool same_bits(const std::vector<double>& a, const std::vector<double>& b)
{
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

} // namespace

TEST_CASE("ln agrees with std::log")
{
    double worst = 0.0;
    for (double x = 1e-300; x < 1e300; x *= 1.37)
        worst = std::max(worst, rel_err(simd::ln(x), std::log(x)));
    // Near 1 the absolute error matters.
    double worst_abs = 0.0;
    for (double x = 0.5; x < 2.0; x += 1e-4)
        worst_abs = std::max(worst_abs, std::abs(simd::ln(x) - std::log(x)));
    CHECK(worst < 4e-16);
    CHECK(worst_abs < 4e-16);
    CHECK(simd::ln(1.0) == 0.0);
}

TEST_CASE("ln1p agrees with std::log1p")
{
    double worst = 0.0;
    for (double x = 1e-18; x < 1e12; x *= 1.11)
        worst = std::max(worst, rel_err(simd::ln1p(x), std::log1p(x)));
    CHECK(worst < 1e-15);
    CHECK(simd::ln1p(0.0) == 0.0);
}

TEST_CASE("exponential_from_block maps the first two words")
{
    const noma::PhiloxBlock block{0x80000000u, 0u, 7u, 9u};
    const double u = noma::unit_open(block[0], block[1]);
    CHECK(simd::exponential_from_block(block, 2.0) == doctest::Approx(-2.0 * std::log(u)).epsilon(1e-15));
}

TEST_CASE("scalar exponential_fill follows the trial counter")
{
    const noma::PhiloxKey key = noma::PhiloxKey::from_seed(42);
    std::vector<double> out(9);
    simd::scalar_kernels().exponential_fill(key, (std::uint64_t{1} << 32) + 5, 3, 1, 1.5, out);
    for (std::size_t j = 0; j < out.size(); ++j)
    {
        const std::uint64_t t = (std::uint64_t{1} << 32) + 5 + j;
        const auto block = noma::philox4x32(
            {static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(t >> 32), 3u, 1u}, key);
        CHECK(out[j] == simd::exponential_from_block(block, 1.5));
    }
}

TEST_CASE("dispatch reports a usable table")
{
    CHECK(simd::is_supported(simd::Isa::scalar));
    const simd::KernelTable& active = simd::active_kernels();
    CHECK(simd::is_supported(active.isa));
    CHECK(&simd::kernels_for(simd::Isa::scalar) == &simd::scalar_kernels());
    CHECK(simd::isa_name(simd::Isa::avx2) == "avx2");
}

TEST_CASE("vector kernels are bitwise identical to scalar kernels")
{
    if (!simd::is_supported(simd::Isa::avx2))
    {
        MESSAGE("avx2 not available on this host; skipping equivalence");
        return;
    }
    const simd::KernelTable& ref = simd::scalar_kernels();
    const simd::KernelTable& vec = simd::kernels_for(simd::Isa::avx2);
    const noma::PhiloxKey key = noma::PhiloxKey::from_seed(0xfeedfacecafebeefull);

    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 8u, 13u, 1023u, 1024u, 4099u})
    {
        CAPTURE(n);
        std::vector<double> a(n), b(n);
        ref.exponential_fill(key, 0xfffffff0ull, 11, 1, 0.7, a);
        vec.exponential_fill(key, 0xfffffff0ull, 11, 1, 0.7, b);
        CHECK(same_bits(a, b));

        std::vector<double> sig(n), itf(n);
        ref.exponential_fill(key, 17, 1, 1, 30.0, sig);
        ref.exponential_fill(key, 17, 2, 1, 3.0, itf);
        if (n > 2)
        {
            sig[0] = 0.0;
            itf[1] = 0.0;
            sig[2] = 1e-17;
        }
        std::vector<double> ra(n), rb(n);
        ref.shannon_rate(sig, itf, 2.5, ra);
        vec.shannon_rate(sig, itf, 2.5, rb);
        CHECK(same_bits(ra, rb));

        std::vector<double> ma = ra, mb = ra;
        ref.min_accumulate(ma, sig);
        vec.min_accumulate(mb, sig);
        CHECK(same_bits(ma, mb));

        std::vector<double> sa = ra, sb = ra;
        ref.add_accumulate(sa, sig);
        vec.add_accumulate(sb, sig);
        CHECK(same_bits(sa, sb));
    }
}

TEST_CASE("batch shannon_rate matches the closed form")
{
    const std::vector<double> sig{0.0, 1.0, 9.0, 1e6, 1e-12};
    const std::vector<double> itf{0.0, 1.0, 0.0, 3.0, 0.0};
    std::vector<double> out(sig.size());
    simd::active_kernels().shannon_rate(sig, itf, 1.0, out);
    for (std::size_t j = 0; j < sig.size(); ++j)
        CHECK(out[j] == doctest::Approx(std::log2(1.0 + sig[j] / (itf[j] + 1.0))).epsilon(1e-14));
}
