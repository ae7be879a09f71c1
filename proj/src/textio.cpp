#include "bqtru/textio.hpp"

#include <zlib.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bqtru/error.hpp"

namespace bqtru {

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::string seal(std::string body) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", crc32_of(body));
  body += "sum: ";
  body += buf;
  body += "\n";
  return body;
}

std::vector<std::string> unseal(std::string_view text) {
  if (text.empty() || text.back() != '\n') throw Error(ErrorKind::MalformedInput, "missing final newline");
  const auto cut = text.rfind("sum: ");
  if (cut == std::string_view::npos || (cut != 0 && text[cut - 1] != '\n'))
    throw Error(ErrorKind::MalformedInput, "missing checksum line");
  const std::string_view body = text.substr(0, cut);
  const std::string_view hex = text.substr(cut + 5, text.size() - cut - 6);
  char expect[16];
  std::snprintf(expect, sizeof expect, "%08x", crc32_of(body));
  if (hex != expect) throw Error(ErrorKind::MalformedInput, "checksum mismatch");

  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < body.size()) {
    const std::size_t end = body.find('\n', start);
    lines.emplace_back(body.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::string_view labeled(std::string_view line, std::string_view label) {
  if (line.size() < label.size() + 1 || line.substr(0, label.size()) != label || line[label.size()] != ':')
    throw Error(ErrorKind::MalformedInput, "expected line '" + std::string(label) + ":'");
  std::string_view rest = line.substr(label.size() + 1);
  if (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
  return rest;
}

std::vector<i64> parse_ints(std::string_view text, long expected) {
  std::vector<i64> values;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == ' ') ++pos;
    if (pos >= text.size()) break;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string token(text.substr(pos, end - pos));
    std::size_t used = 0;
    i64 v = 0;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedInput, "bad integer '" + token + "'");
    }
    if (used != token.size()) throw Error(ErrorKind::MalformedInput, "bad integer '" + token + "'");
    values.push_back(v);
    pos = end;
  }
  if (expected >= 0 && static_cast<long>(values.size()) != expected)
    throw Error(ErrorKind::MalformedInput, "expected " + std::to_string(expected) + " integers");
  return values;
}

std::string join_ints(const std::vector<i64>& values) {
  std::ostringstream out;
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << values[i];
  return out.str();
}

std::vector<std::uint8_t> pack_bits(const std::vector<i64>& values, int bits) {
  std::vector<std::uint8_t> out((values.size() * bits + 7) / 8, 0);
  std::size_t pos = 0;
  for (i64 v : values) {
    if (v < 0 || (bits < 63 && v >= (i64{1} << bits))) throw Error(ErrorKind::DimensionMismatch, "value does not fit");
    for (int b = 0; b < bits; ++b, ++pos)
      if ((v >> b) & 1) out[pos / 8] |= static_cast<std::uint8_t>(1u << (pos % 8));
  }
  return out;
}

std::vector<i64> unpack_bits(const std::vector<std::uint8_t>& bytes, int bits, std::size_t count) {
  if (bytes.size() * 8 < count * bits) throw Error(ErrorKind::MalformedInput, "packed data too short");
  std::vector<i64> out(count, 0);
  std::size_t pos = 0;
  for (auto& v : out)
    for (int b = 0; b < bits; ++b, ++pos)
      if ((bytes[pos / 8] >> (pos % 8)) & 1) v |= i64{1} << b;
  return out;
}

int ceil_log2(i64 m) {
  int bits = 0;
  while ((i64{1} << bits) < m) ++bits;
  return bits;
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("write to " + tmp + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace bqtru
