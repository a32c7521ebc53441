// SPDX-License-Identifier: Apache-2.0
#include "poissinc/csv.hpp"

#include <cstdio>
#include <ostream>

#ifndef POISSINC_VERSION
#    define POISSINC_VERSION "unknown"
#endif

namespace poissinc
{

char const* library_version() noexcept
{
    return POISSINC_VERSION;
}

std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes)
    {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t x)
{
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(x));
    return buf;
}

void write_csv_preamble(std::ostream& os, std::string_view canonical_config)
{
    os << "# poissinc " << library_version() << " config_hash=" << hex64(fnv1a64(canonical_config)) << '\n';
}

}  // namespace poissinc
