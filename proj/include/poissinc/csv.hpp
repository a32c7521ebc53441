// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace poissinc
{

char const* library_version() noexcept;

//! 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes) noexcept;

std::string hex64(std::uint64_t x);

//! Leading comment line of every CSV: library version and config hash.
void write_csv_preamble(std::ostream& os, std::string_view canonical_config);

}  // namespace poissinc
