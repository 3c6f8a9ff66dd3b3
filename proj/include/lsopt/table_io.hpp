#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "lsopt/solver.hpp"

namespace lsopt {

inline constexpr std::uint32_t kTableFormatVersion = 1;

/// Binary layout: "LSVT", u32 version, u64 header length, JSON header
/// (model, cost, n, m, version), then row-major [j][il][ir] arrays:
/// values f64, actions i32, stop f64, gain f64, gain_split i32.
std::string serialize_table(const ValueTable& table);
ValueTable deserialize_table(const std::string& bytes);

void write_table(const ValueTable& table, const std::filesystem::path& path);
ValueTable read_table(const std::filesystem::path& path);

/// FNV-1a 64 over the serialized bytes, as 16 hex digits.
std::string table_checksum(const ValueTable& table);

}  // namespace lsopt
