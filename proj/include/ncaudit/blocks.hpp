#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ncaudit/field.hpp"
#include "ncaudit/rng.hpp"

namespace ncaudit {

struct FileManifest;

/// Deployment parameters. Field size is fixed at 2^8.
struct SystemParams {
  std::uint32_t n = 64;                 // symbols per block, including the two padding symbols
  std::uint32_t m = 4;                  // source blocks
  std::uint32_t nodes = 4;              // N
  std::uint32_t per_node = 2;           // M
  std::uint32_t helpers = 3;            // P
  std::uint32_t repair_per_helper = 1;  // Q
  std::uint32_t ell = 1;                // tags per block
  std::uint32_t lambda_bits = 128;      // key and nonce length

  std::size_t payload_size() const noexcept { return n - 2; }
  std::size_t block_size() const noexcept { return std::size_t{n} + m; }
  std::size_t capacity() const noexcept { return payload_size() * m; }

  /// Throws std::invalid_argument when a constraint is violated.
  void validate() const;
  bool operator==(const SystemParams&) const = default;
};

class UndecodableError : public std::runtime_error {
 public:
  UndecodableError(std::size_t rank, std::size_t needed);
  std::size_t rank() const noexcept { return rank_; }

 private:
  std::size_t rank_;
};

/// A vector in F_q^{n+m}: n data symbols (the last two are padding) followed
/// by m coding coefficients.
class CodedBlock {
 public:
  CodedBlock() = default;
  CodedBlock(std::size_t n, std::size_t m) : symbols_(n + m, 0), n_(n) {}
  CodedBlock(SymbolVector symbols, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  std::size_t m() const noexcept { return symbols_.size() - n_; }
  std::size_t size() const noexcept { return symbols_.size(); }

  std::span<Symbol> symbols() noexcept { return symbols_; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  std::span<Symbol> data() noexcept { return {symbols_.data(), n_}; }
  std::span<const Symbol> data() const noexcept { return {symbols_.data(), n_}; }
  /// First n-2 symbols: the part NCrypt encrypts.
  std::span<Symbol> payload() noexcept { return {symbols_.data(), n_ - 2}; }
  std::span<const Symbol> payload() const noexcept { return {symbols_.data(), n_ - 2}; }
  std::span<Symbol> padding() noexcept { return {symbols_.data() + n_ - 2, 2}; }
  std::span<const Symbol> padding() const noexcept { return {symbols_.data() + n_ - 2, 2}; }
  std::span<Symbol> coeffs() noexcept { return {symbols_.data() + n_, m()}; }
  std::span<const Symbol> coeffs() const noexcept { return {symbols_.data() + n_, m()}; }
  SymbolVector coeff_vector() const { return {coeffs().begin(), coeffs().end()}; }

  /// Appends `extra` zero coefficient coordinates.
  void extend_coeffs(std::size_t extra) { symbols_.resize(symbols_.size() + extra, 0); }

  bool operator==(const CodedBlock&) const = default;

 private:
  SymbolVector symbols_;
  std::size_t n_ = 0;
};

struct SourceSplit {
  std::vector<CodedBlock> blocks;
  /// Bytes of file data carried by each source block (the rest is zero fill).
  std::vector<std::uint32_t> lengths;
};

/// Lays the file out over params.m source blocks of n-2 data symbols, draws
/// the two padding symbols per block, and augments with unit coefficients.
/// Throws std::length_error when the file exceeds params.capacity().
SourceSplit make_source_blocks(std::span<const std::uint8_t> file, const SystemParams& params, Rng& rng);

/// Source block with the given payload bytes (zero filled), fresh padding and
/// the unit coefficient vector e_index of length m.
CodedBlock make_source_block(std::span<const std::uint8_t> payload, std::size_t n, std::size_t m,
                             std::size_t index, Rng& rng);

/// Σ alphas[i]·blocks[i] over every coordinate.
CodedBlock combine_blocks(std::span<const CodedBlock* const> blocks, std::span<const Symbol> alphas);
CodedBlock combine_blocks(std::span<const CodedBlock> blocks, std::span<const Symbol> alphas);

/// Recovers the m source blocks from blocks whose coefficients span F_q^m.
/// Throws UndecodableError otherwise.
std::vector<CodedBlock> recover_sources(std::span<const CodedBlock> blocks, std::size_t m);

/// Original file bytes, honouring the manifest's length record and index mapping.
std::vector<std::uint8_t> decode_file(std::span<const CodedBlock> blocks, const FileManifest& manifest);

}  // namespace ncaudit
