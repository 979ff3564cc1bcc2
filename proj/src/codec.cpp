#include "ncaudit/codec.hpp"

namespace ncaudit {
namespace {

int nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(std::string_view text) {
  if (text.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
  std::vector<std::uint8_t> out(text.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const int hi = nibble(text[2 * i]);
    const int lo = nibble(text[2 * i + 1]);
    if (hi < 0 || lo < 0) throw std::invalid_argument("from_hex: bad digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

void ByteWriter::u32(std::uint32_t v) {
  for (int s = 24; s >= 0; s -= 8) out_.push_back(static_cast<std::uint8_t>(v >> s));
}

void ByteWriter::prefixed(std::span<const std::uint8_t> b) {
  u32(static_cast<std::uint32_t>(b.size()));
  bytes(b);
}

void ByteWriter::prefixed(std::string_view s) {
  prefixed(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
}

std::uint8_t ByteReader::u8() { return bytes(1)[0]; }

std::uint32_t ByteReader::u32() {
  const auto b = bytes(4);
  return std::uint32_t{b[0]} << 24 | std::uint32_t{b[1]} << 16 | std::uint32_t{b[2]} << 8 | b[3];
}

std::span<const std::uint8_t> ByteReader::bytes(std::size_t n) {
  if (n > remaining()) throw WireError("truncated message");
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

std::span<const std::uint8_t> ByteReader::prefixed() { return bytes(u32()); }

std::string ByteReader::prefixed_string() {
  const auto b = prefixed();
  return {b.begin(), b.end()};
}

void ByteReader::expect_end() const {
  if (remaining() != 0) throw WireError("trailing bytes in message");
}

}  // namespace ncaudit
