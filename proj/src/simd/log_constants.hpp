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

// Shared constants of the log kernel. Any change here must be mirrored in
// every variant, and the bitwise equivalence tests will catch a mismatch.
//
// ln(x) = e ln2 + ln(m), m in [sqrt(1/2), sqrt(2)], and
// ln(m) = 2s + s z P(z), s = (m - 1)/(m + 1), z = s^2, |z| <= 0.0295,
// P(z) = sum_k 2 z^k / (2k + 3), truncated where the next term is below 1e-17.

#include <cstdint>

namespace noma::simd::detail
{

inline constexpr double kSqrt2 = 1.41421356237309504880;
// fdlibm split of ln 2: the high part carries 32 significant bits so e * kLn2Hi is exact.
inline constexpr double kLn2Hi = 6.93147180369123816490e-01;
inline constexpr double kLn2Lo = 1.90821492927058770002e-10;
inline constexpr double kInvLn2 = 1.44269504088896340736;

inline constexpr std::uint64_t kMantissaMask = 0x000FFFFFFFFFFFFFull;
inline constexpr std::uint64_t kOneBits = 0x3FF0000000000000ull;
inline constexpr std::uint64_t kMagic52Bits = 0x4330000000000000ull;
inline constexpr double kExponentBias = 1023.0;

inline constexpr int kLogTerms = 10;
// P coefficients 2/(2k+3), k = 0..9, highest degree last.
inline constexpr double kLogPoly[kLogTerms] = {
    2.0 / 3.0,  2.0 / 5.0,  2.0 / 7.0,  2.0 / 9.0,  2.0 / 11.0,
    2.0 / 13.0, 2.0 / 15.0, 2.0 / 17.0, 2.0 / 19.0, 2.0 / 21.0,
};

} // namespace noma::simd::detail
