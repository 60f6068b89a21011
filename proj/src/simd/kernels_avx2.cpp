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

// AVX2 variants, 4 doubles per iteration.
// This file must be compiled with -mavx2 -ffp-contract=off. It uses no FMA:
// results have to match the scalar reference bit for bit.

#include <immintrin.h>

#include "log_constants.hpp"
#include "noma/simd/kernels.hpp"

namespace noma::simd::avx2
{

using namespace detail;

namespace
{

inline __m256d ln_pd(__m256d x)
{
    const __m256i bits = _mm256_castpd_si256(x);
    const __m256i exp_bits = _mm256_or_si256(_mm256_srli_epi64(bits, 52),
                                             _mm256_set1_epi64x(static_cast<long long>(kMagic52Bits)));
    __m256d e = _mm256_sub_pd(_mm256_sub_pd(_mm256_castsi256_pd(exp_bits), _mm256_set1_pd(0x1p52)),
                              _mm256_set1_pd(kExponentBias));
    const __m256i mant_bits =
        _mm256_or_si256(_mm256_and_si256(bits, _mm256_set1_epi64x(static_cast<long long>(kMantissaMask))),
                        _mm256_set1_epi64x(static_cast<long long>(kOneBits)));
    __m256d m = _mm256_castsi256_pd(mant_bits);

    const __m256d above = _mm256_cmp_pd(m, _mm256_set1_pd(kSqrt2), _CMP_GT_OQ);
    m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), above);
    e = _mm256_blendv_pd(e, _mm256_add_pd(e, _mm256_set1_pd(1.0)), above);

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d s = _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
    const __m256d z = _mm256_mul_pd(s, s);
    __m256d p = _mm256_set1_pd(kLogPoly[kLogTerms - 1]);
    for (int k = kLogTerms - 2; k >= 0; --k)
        p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(kLogPoly[k]));
    const __m256d ln_m = _mm256_add_pd(_mm256_add_pd(s, s), _mm256_mul_pd(_mm256_mul_pd(s, z), p));
    return _mm256_add_pd(_mm256_mul_pd(e, _mm256_set1_pd(kLn2Hi)),
                         _mm256_add_pd(ln_m, _mm256_mul_pd(e, _mm256_set1_pd(kLn2Lo))));
}

inline __m256d ln1p_pd(__m256d x)
{
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d u = _mm256_add_pd(one, x);
    const __m256d correction = _mm256_div_pd(_mm256_sub_pd(x, _mm256_sub_pd(u, one)), u);
    return _mm256_add_pd(ln_pd(u), correction);
}

// One Philox round on four independent counters. Each 64-bit lane holds a
// 32-bit word in its low half; _mm256_mul_epu32 reads exactly that half.
struct PhiloxLanes
{
    __m256i c0, c1, c2, c3;
};

inline PhiloxLanes philox_round(const PhiloxLanes& c, std::uint32_t k0, std::uint32_t k1)
{
    const __m256i low32 = _mm256_set1_epi64x(0xFFFFFFFFll);
    const __m256i p0 = _mm256_mul_epu32(c.c0, _mm256_set1_epi64x(kPhiloxM0));
    const __m256i p1 = _mm256_mul_epu32(c.c2, _mm256_set1_epi64x(kPhiloxM1));
    PhiloxLanes out;
    out.c0 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c.c1), _mm256_set1_epi64x(k0));
    out.c1 = _mm256_and_si256(p1, low32);
    out.c2 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c.c3), _mm256_set1_epi64x(k1));
    out.c3 = _mm256_and_si256(p0, low32);
    return out;
}

void exponential_fill(PhiloxKey key, std::uint64_t first_trial, std::uint32_t link, std::uint32_t domain,
                      double mean, std::span<double> out)
{
    std::uint32_t k0[kPhiloxRounds];
    std::uint32_t k1[kPhiloxRounds];
    for (int r = 0; r < kPhiloxRounds; ++r)
    {
        k0[r] = key.lo + static_cast<std::uint32_t>(r) * kPhiloxW0;
        k1[r] = key.hi + static_cast<std::uint32_t>(r) * kPhiloxW1;
    }

    const __m256i low32 = _mm256_set1_epi64x(0xFFFFFFFFll);
    const __m256i lane_offsets = _mm256_set_epi64x(3, 2, 1, 0);
    const __m256i link_vec = _mm256_set1_epi64x(link);
    const __m256i domain_vec = _mm256_set1_epi64x(domain);
    const __m256i magic = _mm256_set1_epi64x(static_cast<long long>(kMagic52Bits));
    const __m256d two52 = _mm256_set1_pd(0x1p52);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d inv2_52 = _mm256_set1_pd(0x1p-52);
    const __m256d mean_vec = _mm256_set1_pd(mean);
    const __m256d sign_bit = _mm256_set1_pd(-0.0);

    std::size_t j = 0;
    for (; j + 4 <= out.size(); j += 4)
    {
        const __m256i t = _mm256_add_epi64(_mm256_set1_epi64x(static_cast<long long>(first_trial + j)),
                                           lane_offsets);
        PhiloxLanes c{_mm256_and_si256(t, low32), _mm256_srli_epi64(t, 32), link_vec, domain_vec};
        for (int r = 0; r < kPhiloxRounds; ++r)
            c = philox_round(c, k0[r], k1[r]);

        const __m256i bits = _mm256_srli_epi64(_mm256_or_si256(_mm256_slli_epi64(c.c0, 32), c.c1), 12);
        const __m256d as_int = _mm256_sub_pd(_mm256_castsi256_pd(_mm256_or_si256(bits, magic)), two52);
        const __m256d u = _mm256_mul_pd(_mm256_add_pd(as_int, half), inv2_52);
        const __m256d neg_ln = _mm256_xor_pd(ln_pd(u), sign_bit);
        _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(mean_vec, neg_ln));
    }
    if (j < out.size())
        scalar_kernels().exponential_fill(key, first_trial + j, link, domain, mean, out.subspan(j));
}

void shannon_rate(std::span<const double> signal, std::span<const double> interference, double bandwidth,
                  std::span<double> out)
{
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d inv_ln2 = _mm256_set1_pd(kInvLn2);
    const __m256d bw = _mm256_set1_pd(bandwidth);
    std::size_t j = 0;
    for (; j + 4 <= out.size(); j += 4)
    {
        const __m256d s = _mm256_loadu_pd(signal.data() + j);
        const __m256d i = _mm256_loadu_pd(interference.data() + j);
        const __m256d sinr = _mm256_div_pd(s, _mm256_add_pd(i, one));
        _mm256_storeu_pd(out.data() + j, _mm256_mul_pd(bw, _mm256_mul_pd(ln1p_pd(sinr), inv_ln2)));
    }
    if (j < out.size())
        scalar_kernels().shannon_rate(signal.subspan(j), interference.subspan(j), bandwidth, out.subspan(j));
}

void min_accumulate(std::span<double> acc, std::span<const double> x)
{
    std::size_t j = 0;
    for (; j + 4 <= acc.size(); j += 4)
    {
        // _mm256_min_pd(a, b) returns a < b ? a : b, the scalar rule with a = x.
        const __m256d v = _mm256_min_pd(_mm256_loadu_pd(x.data() + j), _mm256_loadu_pd(acc.data() + j));
        _mm256_storeu_pd(acc.data() + j, v);
    }
    if (j < acc.size())
        scalar_kernels().min_accumulate(acc.subspan(j), x.subspan(j));
}

void add_accumulate(std::span<double> acc, std::span<const double> x)
{
    std::size_t j = 0;
    for (; j + 4 <= acc.size(); j += 4)
    {
        const __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc.data() + j), _mm256_loadu_pd(x.data() + j));
        _mm256_storeu_pd(acc.data() + j, v);
    }
    if (j < acc.size())
        scalar_kernels().add_accumulate(acc.subspan(j), x.subspan(j));
}

} // namespace

const KernelTable& table()
{
    static const KernelTable t{
        Isa::avx2, exponential_fill, shannon_rate, min_accumulate, add_accumulate,
    };
    return t;
}

} // namespace noma::simd::avx2
