#pragma once

// Byte-exact message layouts. All integers are big-endian.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ncaudit/audit.hpp"
#include "ncaudit/codec.hpp"

namespace ncaudit::wire {

using Bytes = std::vector<std::uint8_t>;

inline constexpr std::array<std::uint8_t, 4> kBlockMagic{'N', 'C', 'A', 'B'};
inline constexpr std::uint8_t kBlockVersion = 1;

/// "NCAB" ‖ version ‖ n ‖ m ‖ n+m symbols.
Bytes encode_block(const CodedBlock& block);
CodedBlock decode_block(std::span<const std::uint8_t> bytes);

/// ℓ raw bytes in key-index order.
Bytes encode_tag(const TagVector& tag);
TagVector decode_tag(std::span<const std::uint8_t> bytes, std::size_t ell);

/// file_id (length-prefixed) ‖ count ‖ (index+1, α)...; indices are 1-based on the wire.
Bytes encode_challenge(const Challenge& chal);
Challenge decode_challenge(std::span<const std::uint8_t> bytes, std::uint32_t node);

/// c̄ (n-2) ‖ nonce (λ/8) ‖ p (ℓ).
Bytes encode_ciphertext(const Ciphertext& ct);
Ciphertext decode_ciphertext(std::span<const std::uint8_t> bytes, const SystemParams& params);

/// ciphertext ‖ 2 pad bytes ‖ ℓ tag bytes.
Bytes encode_proof(const Proof& proof);
Proof decode_proof(std::span<const std::uint8_t> bytes, const SystemParams& params);

/// n ‖ ℓ ‖ basis (n-1 rows of n-2) ‖ scalars (ℓ rows of n-1).
Bytes encode_aux(const AuxiliaryElements& aux);
AuxiliaryElements decode_aux(std::span<const std::uint8_t> bytes);

/// count ‖ length ‖ rows; for coefficient tables.
Bytes encode_rows(std::span<const SymbolVector> rows);
std::vector<SymbolVector> decode_rows(std::span<const std::uint8_t> bytes);

struct RepairMessage {
  std::uint32_t helper = 0;
  std::uint32_t j = 0;
  CodedBlock block;
  TagVector tag;

  bool operator==(const RepairMessage&) const = default;
};

/// helper ‖ j ‖ encoded block ‖ ℓ tag bytes.
Bytes encode_repair(const RepairMessage& msg);
RepairMessage decode_repair(std::span<const std::uint8_t> bytes, std::size_t ell);

}  // namespace ncaudit::wire
