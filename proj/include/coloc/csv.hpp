#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace coloc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Split one CSV line on commas. Fields are opaque identifiers and must not
/// themselves contain commas or newlines; no quoting is interpreted.
std::vector<std::string> split_csv(const std::string& line);

bool parse_i64(std::string_view s, std::int64_t& out);
bool parse_u64(std::string_view s, std::uint64_t& out);

/// Shortest round-trip decimal rendering (std::to_chars), so serialized
/// numbers are byte-stable across runs and platforms.
std::string fmt_double(double v);

/// FNV-1a over a whole byte buffer, used to stamp inputs in run manifests.
std::uint64_t fnv1a64_bytes(const void* data, std::size_t n);

std::string read_file_bytes(const std::string& path);
void write_file_bytes(const std::string& path, std::string_view contents);

} // namespace coloc
