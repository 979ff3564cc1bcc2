#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ncaudit/audit.hpp"
#include "ncaudit/cluster.hpp"

namespace ncaudit {

/// δ_j = t_{b'_j} - t_{b_j}.
struct UpdateDelta {
  std::uint32_t source = 0;
  TagVector delta;
};

/// New contents of the listed nodes after an append, as full rows of length
/// m+1. Unlisted nodes keep their blocks (with a zero coordinate appended).
using AppendPlacement = std::map<std::uint32_t, std::vector<SymbolVector>>;

/// The EVENODD placement for a fifth block: node 2 and 3 gain b5, node 4
/// becomes b3, b1+b4, b2+b5.
AppendPlacement evenodd4_append_placement();

struct AppendReport {
  std::uint32_t source = 0;
  TagVector tag;
  std::vector<std::uint32_t> changed_nodes;
};

/// Throws std::out_of_range when the placement names an unknown node and
/// std::invalid_argument when a row cannot be built from existing blocks.
AppendReport append_block(Cluster& cluster, std::span<const std::uint8_t> payload, const AppendPlacement& placement);

struct UpdateOptions {
  /// Nodes that receive the new block but do not apply it (stale-node simulation).
  std::vector<std::uint32_t> skip_patch_nodes;
};

struct UpdateReport {
  UpdateDelta delta;
  std::vector<std::uint32_t> tag_sources;  // nodes whose tags the user downloaded
  std::vector<std::uint32_t> patched_nodes;
};

/// Replaces source block j. The user downloads tags only; the auditor keeps
/// a running δ per source. Throws std::invalid_argument when j is not live or
/// not expressible from stored blocks.
UpdateReport update_block(Cluster& cluster, std::uint32_t source, std::span<const std::uint8_t> payload,
                          const UpdateOptions& options = {});

/// verify_proof with tag t + Σ_j α̃_j·δ_j, α̃ being the challenged combination's coefficients.
bool verify_with_deltas(const SpaceMac& mac, const FileManifest& manifest, const DeltaLog& deltas,
                        const Challenge& chal, const Proof& proof, VerifyStats* stats = nullptr);

/// Appends the block and maps it to logical position `pos` (0..entries).
/// Default placement replicates it on the first N - k + 1 nodes, k being the
/// smallest node count that always decodes.
std::uint32_t insert_block(Cluster& cluster, std::size_t pos, std::span<const std::uint8_t> payload,
                           const std::optional<AppendPlacement>& placement = std::nullopt);

/// Updates the block at logical position `pos` to all-zero data with fresh
/// padding and tombstones the position. Throws std::logic_error when the
/// position is already deleted.
void delete_block(Cluster& cluster, std::size_t pos);

}  // namespace ncaudit
