#pragma once

#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ncaudit/blocks.hpp"
#include "ncaudit/field.hpp"
#include "ncaudit/prf.hpp"

namespace ncaudit {

/// ℓ SpaceMac tags of one block; tag j is computed under key index j+1.
struct TagVector {
  SymbolVector values;

  TagVector() = default;
  explicit TagVector(std::size_t ell) : values(ell, 0) {}
  explicit TagVector(SymbolVector v) : values(std::move(v)) {}

  std::size_t size() const noexcept { return values.size(); }
  Symbol operator[](std::size_t j) const { return values[j]; }
  Symbol& operator[](std::size_t j) { return values[j]; }
  bool is_zero() const noexcept;

  /// Componentwise field addition (which is also subtraction).
  TagVector& operator+=(const TagVector& other);
  friend TagVector operator+(TagVector a, const TagVector& b) { return a += b; }
  bool operator==(const TagVector&) const = default;
};

/// Homomorphic MAC over F_q^{n+m} with ℓ independent r-vectors derived from
/// one verification key. r-vectors are cached per key index; the cache only
/// grows (prefix-stable derivation) and is safe for concurrent readers.
class SpaceMac {
 public:
  SpaceMac(Prf kv, std::string file_id, std::uint32_t ell);
  SpaceMac(const SpaceMac& other);
  SpaceMac& operator=(const SpaceMac&) = delete;

  std::uint32_t ell() const noexcept { return ell_; }
  const std::string& file_id() const noexcept { return file_id_; }

  /// r_j of at least `length` entries; key_index is 1-based. The returned
  /// vector may be longer than requested.
  std::shared_ptr<const SymbolVector> r_vector(std::uint32_t key_index, std::size_t length) const;

  TagVector mac(std::span<const Symbol> block) const;
  TagVector mac(const CodedBlock& block) const { return mac(block.symbols()); }

  /// Accepts iff every tag j equals block·r_j.
  bool verify(std::span<const Symbol> block, const TagVector& tag) const;
  bool verify(const CodedBlock& block, const TagVector& tag) const { return verify(block.symbols(), tag); }

 private:
  Prf prf_;
  std::string file_id_;
  std::uint32_t ell_;
  mutable std::shared_mutex mu_;
  mutable std::vector<std::shared_ptr<const SymbolVector>> cache_;
};

struct TagEntry {
  const CodedBlock* block = nullptr;  // carried for interface fidelity; never read
  const TagVector* tag = nullptr;
  Symbol alpha = 0;
};

/// Σ alpha_i·tag_i. Throws std::invalid_argument when ℓ differs across entries.
TagVector combine_tags(std::span<const TagEntry> entries);

/// Σ alphas[i]·tags[i].
TagVector combine_tags(std::span<const TagVector* const> tags, std::span<const Symbol> alphas);

}  // namespace ncaudit
