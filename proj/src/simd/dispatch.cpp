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

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "noma/simd/kernels.hpp"

namespace noma::simd
{

#if NOMA_HAVE_AVX2_KERNELS
namespace avx2
{
const KernelTable& table();
}
#endif

std::string_view isa_name(Isa isa)
{
    switch (isa)
    {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "unknown";
}

bool is_supported(Isa isa)
{
    switch (isa)
    {
    case Isa::scalar:
        return true;
    case Isa::avx2:
#if NOMA_HAVE_AVX2_KERNELS
        return __builtin_cpu_supports("avx2") != 0;
#else
        return false;
#endif
    }
    return false;
}

const KernelTable& kernels_for(Isa isa)
{
    if (!is_supported(isa))
        throw std::runtime_error("kernel variant '" + std::string(isa_name(isa)) + "' is not available on this host");
    switch (isa)
    {
    case Isa::avx2:
#if NOMA_HAVE_AVX2_KERNELS
        return avx2::table();
#endif
    case Isa::scalar:
        break;
    }
    return scalar_kernels();
}

namespace
{

const KernelTable& select_kernels()
{
    if (const char* forced = std::getenv("NOMA_SIMD"))
    {
        const std::string name(forced);
        if (name == "scalar")
            return kernels_for(Isa::scalar);
        if (name == "avx2")
            return kernels_for(Isa::avx2);
        throw std::runtime_error("NOMA_SIMD must be 'scalar' or 'avx2', got '" + name + "'");
    }
    return is_supported(Isa::avx2) ? kernels_for(Isa::avx2) : scalar_kernels();
}

} // namespace

const KernelTable& active_kernels()
{
    static const KernelTable& table = select_kernels();
    return table;
}

} // namespace noma::simd
