#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncaudit/field.hpp"
#include "ncaudit/rng.hpp"

namespace ncaudit {

/// The three keyed functions. The numeric value is the encoded function id.
enum class PrfFunction : std::uint8_t {
  kMacVector = 1,        // F1: SpaceMac r-vector entries
  kMaskBasis = 2,        // F2: NCrypt mask basis
  kMaskCoefficient = 3,  // F3: NCrypt masking coefficients
};

enum class PrfMode {
  production,  // SipHash-2-4 under a BLAKE2b-derived subkey
  test,        // pinned splitmix64 construction, reproducible across languages
};

/// NCAUDIT_TEST_PRF=1 selects the test instantiation.
PrfMode prf_mode_from_env();

inline constexpr std::size_t kMinKeyBits = 80;
inline constexpr std::size_t kMaxKeyBits = 256;
inline constexpr std::size_t kDefaultKeyBits = 128;

class PrfKey {
 public:
  PrfKey() = default;
  /// Length must be 10..32 bytes.
  explicit PrfKey(std::vector<std::uint8_t> bytes);
  static PrfKey generate(std::size_t bits, Rng& rng);

  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::size_t bits() const noexcept { return bytes_.size() * 8; }
  bool operator==(const PrfKey&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Input of one PRF evaluation. Indices are 1-based. The nonce is present
/// for F3 only.
struct PrfDomain {
  PrfFunction function = PrfFunction::kMacVector;
  std::string_view file_id;
  std::span<const std::uint8_t> nonce;
  std::array<std::uint32_t, 3> indices{};
  std::size_t index_count = 0;

  PrfDomain(PrfFunction fn, std::string_view id, std::initializer_list<std::uint32_t> idx,
            std::span<const std::uint8_t> nonce_bytes = {});

  static PrfDomain mac_vector(std::string_view id, std::uint32_t key_index, std::uint32_t position) {
    return {PrfFunction::kMacVector, id, {key_index, position}};
  }
  static PrfDomain mask_basis(std::string_view id, std::uint32_t i, std::uint32_t j) {
    return {PrfFunction::kMaskBasis, id, {i, j}};
  }
  static PrfDomain mask_coefficient(std::string_view id, std::span<const std::uint8_t> nonce,
                                    std::uint32_t i) {
    return {PrfFunction::kMaskCoefficient, id, {i}, nonce};
  }

  /// function_id ‖ u32be(|file_id|) ‖ file_id ‖ [u32be(|nonce|) ‖ nonce] ‖ u32be(index)...
  std::vector<std::uint8_t> encode() const;
};

class Prf {
 public:
  Prf(PrfKey key, PrfMode mode);

  Symbol eval(const PrfDomain& domain) const;

  /// eval() of `domain` with its last index replaced by first, first+1, ...
  /// Same values as repeated eval(), shares the prefix work.
  void eval_run(const PrfDomain& domain, std::uint32_t first, std::span<Symbol> out) const;

  const PrfKey& key() const noexcept { return key_; }
  PrfMode mode() const noexcept { return mode_; }

 private:
  PrfKey key_;
  PrfMode mode_;
  std::uint64_t test_seed_ = 0;
  std::array<std::uint8_t, 16> sip_key_{};
};

namespace prf_test {
/// splitmix64 finaliser used by the pinned test instantiation.
std::uint64_t mix(std::uint64_t z) noexcept;
inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}  // namespace prf_test

/// r_j = (F1(k, id, j, 1), ..., F1(k, id, j, length)). Prefix stable in length.
SymbolVector derive_r_vector(const Prf& kv, std::string_view file_id, std::uint32_t key_index,
                             std::size_t length);

}  // namespace ncaudit
