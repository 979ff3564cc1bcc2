#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "ncaudit/audit.hpp"
#include "ncaudit/manifest.hpp"
#include "ncaudit/rng.hpp"
#include "ncaudit/wire.hpp"

namespace ncaudit {

class PlanningError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficients for rebuilding one node from helper combinations.
struct RepairPlan {
  std::uint32_t failed_node = 0;
  std::vector<std::uint32_t> helpers;
  std::uint32_t per_helper = 0;  // Q
  /// gamma[i][j] has one entry per block stored at helpers[i].
  std::vector<std::vector<SymbolVector>> gamma;
  /// theta[k][i*Q + j] weights repair block (i, j) in new block k.
  std::vector<SymbolVector> theta;
  std::vector<SymbolVector> expected_new_coeffs;
  /// Draws used (functional repair).
  std::size_t attempts = 1;
};

/// Coefficient rows of helper i's repair blocks: Σ_u γ_{i,j,u}·aug(e_{i,u}).
std::vector<SymbolVector> repair_block_coeffs(const FileManifest& manifest, const RepairPlan& plan);
/// Σ_{i,j} θ_{i,j,k}·(repair block coefficients), from the manifest alone.
std::vector<SymbolVector> predict_new_coeffs(const FileManifest& manifest, const RepairPlan& plan);

/// Rebuilds the failed node's exact coefficient rows using at most
/// params.helpers surviving nodes, each sending params.repair_per_helper blocks.
RepairPlan plan_exact_repair(const FileManifest& manifest, std::uint32_t failed_node);

/// Random γ/θ, redrawn until every node subset that could decode before
/// the failure still can with the new node in place.
RepairPlan plan_functional_repair(const FileManifest& manifest, std::uint32_t failed_node, Rng& rng,
                                  std::size_t max_attempts = 64);

/// Helper side: g_{i,j} by block combination, its tag by tag combination.
std::vector<wire::RepairMessage> make_repair_blocks(std::uint32_t helper_id, const NodeStore& store,
                                                    std::span<const SymbolVector> gamma_i);

/// New-node side: h_k and its tag from the received repair blocks.
NodeStore reconstruct_node(std::span<const wire::RepairMessage> inputs, std::span<const SymbolVector> theta);

/// Replaces the failed node's rows. Throws std::invalid_argument when
/// new_coeffs differ from the plan's prediction.
void refresh_manifest(FileManifest& manifest, const RepairPlan& plan, std::span<const SymbolVector> new_coeffs);

}  // namespace ncaudit
