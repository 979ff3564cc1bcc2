#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncaudit/blocks.hpp"
#include "ncaudit/spacemac.hpp"

namespace ncaudit {

/// Logical block position -> physical source index. Deleted positions stay
/// as tombstones (nullopt) and are skipped by logical indexing.
struct IndexMapping {
  std::vector<std::optional<std::uint32_t>> entries;

  static IndexMapping identity(std::size_t m);

  std::size_t live_count() const noexcept;
  /// Index into `entries` of the logical position, or nullopt when out of range.
  std::optional<std::size_t> slot_of(std::size_t logical) const noexcept;
  /// Throws std::logic_error unless every live entry names a distinct source < m.
  void validate(std::size_t m) const;

  bool operator==(const IndexMapping&) const = default;
};

/// Running sum of tag deltas per updated source index.
using DeltaLog = std::map<std::uint32_t, TagVector>;

/// What the user and the TPA retain about one outsourced file.
struct FileManifest {
  std::string file_id;
  SystemParams params;
  /// Bytes of file data in each source block (residual length record).
  std::vector<std::uint32_t> source_lengths;
  /// node_coeffs[node][k] = aug(e_k) at that node, each of length params.m.
  std::vector<std::vector<SymbolVector>> node_coeffs;
  IndexMapping mapping;
  DeltaLog deltas;

  std::size_t node_count() const noexcept { return node_coeffs.size(); }
  const std::vector<SymbolVector>& rows(std::size_t node) const { return node_coeffs.at(node); }
  /// Total stored coefficient symbols (N·M·m for a uniform layout).
  std::size_t coefficient_symbols() const noexcept;
  /// Every coefficient row across all nodes, node-major.
  std::vector<SymbolVector> all_rows() const;

  /// Structured text (JSON, fixed field order).
  std::string serialize() const;
  static FileManifest parse(const std::string& text);
  void save(const std::filesystem::path& path) const;
  static FileManifest load(const std::filesystem::path& path);

  bool operator==(const FileManifest&) const = default;
};

}  // namespace ncaudit
