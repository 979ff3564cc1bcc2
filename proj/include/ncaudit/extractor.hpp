#pragma once

// Recovers a node's blocks from challenge-response rounds alone.

#include <cstdint>
#include <string>
#include <vector>

#include "ncaudit/audit.hpp"
#include "ncaudit/cluster.hpp"

namespace ncaudit {

class ChallengeOracle {
 public:
  virtual ~ChallengeOracle() = default;
  virtual Proof answer(const Challenge& chal) = 0;
};

/// Sends challenges to a cluster node on the user's behalf.
class ClusterOracle final : public ChallengeOracle {
 public:
  ClusterOracle(Cluster& cluster, std::uint32_t node) : cluster_(cluster), node_(node) {}
  Proof answer(const Challenge& chal) override;

 private:
  Cluster& cluster_;
  std::uint32_t node_;
};

struct ExtractOptions {
  std::size_t repetitions = 15;  // R, challenges per equation
  /// Extra votes allowed, over all equations and the final check, when a
  /// vote has no verified strict majority.
  std::size_t retry_budget = 16;
};

struct ExtractionResult {
  bool success = false;
  std::vector<CodedBlock> blocks;  // M blocks in node order when successful
  std::string failure;
  std::size_t challenges = 0;
  std::size_t failed_equations = 0;
};

/// Majority-votes the decrypted answers to constant multiples of M random
/// challenge vectors and solves for the stored blocks. A result that cannot
/// be confirmed is reported as a failure, never as data.
ExtractionResult extract_node(ChallengeOracle& oracle, const FileManifest& manifest, std::uint32_t node,
                              const SpaceMac& mac, const Prf& k_e, const AuxiliaryElements& aux, Rng& rng,
                              const ExtractOptions& options = {});

}  // namespace ncaudit
