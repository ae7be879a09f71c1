#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bqtru/types.hpp"

namespace bqtru {

/// CRC-32 of the bytes (zlib polynomial).
std::uint32_t crc32_of(std::string_view bytes);

/// Appends "sum: <crc32 hex>" covering everything before it.
std::string seal(std::string body);

/// Verifies and strips the checksum line; returns the remaining lines.
/// Throws MalformedInput.
std::vector<std::string> unseal(std::string_view text);

/// Text after "<label>: " or MalformedInput.
std::string_view labeled(std::string_view line, std::string_view label);

/// Space-separated decimal integers; expected < 0 accepts any count.
std::vector<i64> parse_ints(std::string_view text, long expected = -1);

std::string join_ints(const std::vector<i64>& values);

/// Bit-packs values at `bits` bits each, least significant bit first.
std::vector<std::uint8_t> pack_bits(const std::vector<i64>& values, int bits);
std::vector<i64> unpack_bits(const std::vector<std::uint8_t>& bytes, int bits, std::size_t count);

/// ceil(log2 m) for m >= 1.
int ceil_log2(i64 m);

/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace bqtru
