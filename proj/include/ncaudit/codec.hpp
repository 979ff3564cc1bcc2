#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ncaudit {

class WireError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
/// Throws std::invalid_argument on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view text);

/// Big-endian byte writer.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v);
  void bytes(std::span<const std::uint8_t> b) { out_.insert(out_.end(), b.begin(), b.end()); }
  /// u32 length prefix followed by the bytes.
  void prefixed(std::span<const std::uint8_t> b);
  void prefixed(std::string_view s);

  std::vector<std::uint8_t>& buffer() noexcept { return out_; }
  std::vector<std::uint8_t> take() noexcept { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

/// Big-endian reader over a borrowed buffer. Throws WireError on truncation.
class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::span<const std::uint8_t> bytes(std::size_t n);
  std::span<const std::uint8_t> prefixed();
  std::string prefixed_string();

  std::size_t remaining() const noexcept { return in_.size() - pos_; }
  /// Throws WireError when bytes are left over.
  void expect_end() const;

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace ncaudit
