#pragma once

// In-process simulation of the user, the storage nodes and the auditor.
// Every interaction goes through Cluster::send, which serializes the
// payload, charges the byte ledger and appends a transcript record.

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "ncaudit/audit.hpp"
#include "ncaudit/layout.hpp"
#include "ncaudit/manifest.hpp"
#include "ncaudit/ncrypt.hpp"
#include "ncaudit/repair.hpp"
#include "ncaudit/rng.hpp"
#include "ncaudit/spacemac.hpp"
#include "ncaudit/wire.hpp"

namespace ncaudit {

enum class Role : std::uint8_t { user, node, tpa };

struct Party {
  Role role = Role::user;
  std::uint32_t index = 0;  // node number, 0-based; unused for user and tpa

  static Party user() { return {Role::user, 0}; }
  static Party tpa() { return {Role::tpa, 0}; }
  static Party node(std::uint32_t i) { return {Role::node, i}; }

  std::string name() const;
  auto operator<=>(const Party&) const = default;
};

class KeyScopeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Key access by role: nodes never see k_v, the auditor never sees k_e.
class KeyVault {
 public:
  explicit KeyVault(KeyMaterial keys) : keys_(std::move(keys)) {}

  const Prf& k_v(Role reader) const;
  const Prf& k_e(Role reader) const;

 private:
  KeyMaterial keys_;
};

enum class ByteCategory : std::uint8_t { data_block, tag, coefficient, proof, control };
inline constexpr std::size_t kCategoryCount = 5;
const char* category_name(ByteCategory c) noexcept;

class ByteLedger {
 public:
  using Counters = std::array<std::uint64_t, kCategoryCount>;

  void record(const Party& from, const Party& to, ByteCategory cat, std::uint64_t bytes);

  std::uint64_t sent(const Party& p, ByteCategory cat) const;
  std::uint64_t received(const Party& p, ByteCategory cat) const;
  std::uint64_t total_sent(ByteCategory cat) const;
  std::uint64_t total_received(ByteCategory cat) const;
  std::uint64_t messages() const noexcept { return messages_; }

 private:
  std::map<Party, Counters> sent_;
  std::map<Party, Counters> received_;
  std::uint64_t messages_ = 0;
};

// Fault descriptors. Node numbers are 0-based.
struct CorruptSymbol {
  std::uint32_t block = 0;
  std::uint32_t position = 0;  // within the n data symbols
  Symbol delta = 1;
};
struct DeleteBlockFault {
  std::uint32_t block = 0;
};
struct NodeSnapshot {
  std::uint32_t node = 0;
  std::uint64_t epoch = 0;
  NodeStore store;
};
struct ReplayOld {
  NodeSnapshot snapshot;
};
struct LieProbability {
  double epsilon = 0.0;
};
using FaultDescriptor = std::variant<CorruptSymbol, DeleteBlockFault, ReplayOld, LieProbability>;

class InvalidFaultError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct NodeState {
  NodeStore store;
  /// Incremented by each functional repair of this node.
  std::uint64_t epoch = 0;
  double lie_probability = 0.0;
  /// Served instead of `store` by a node replaying old data.
  std::optional<NodeStore> replay;
  Rng rng = Rng::seeded(0);

  const NodeStore& served() const noexcept { return replay ? *replay : store; }
};

struct ClusterConfig {
  SystemParams params;
  std::string layout = "evenodd4";
  std::uint64_t seed = 1;
  PrfMode prf_mode = PrfMode::production;
  std::string file_id = "file";
};

struct AuditOutcome {
  bool accepted = false;
  Challenge challenge;
  Proof proof;
  std::size_t proof_bytes = 0;
  VerifyStats verify;
};

enum class RepairMode { exact, functional };

struct RepairReport {
  RepairPlan plan;
  std::uint64_t user_data_block_bytes = 0;  // received by the user during the repair
  std::uint64_t helper_bytes = 0;           // repair messages sent by helpers
  bool post_audit_accepted = false;
};

struct ClusterAccess;

class Cluster {
 public:
  static Cluster spawn(const ClusterConfig& config, std::span<const std::uint8_t> file);

  Cluster(Cluster&&) noexcept;
  Cluster& operator=(Cluster&&) noexcept;
  ~Cluster();

  const ClusterConfig& config() const noexcept { return config_; }
  const SystemParams& params() const noexcept { return user_manifest_.params; }
  const FileManifest& user_manifest() const noexcept { return user_manifest_; }
  const FileManifest& tpa_manifest() const noexcept { return tpa_manifest_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  const NodeState& node(std::uint32_t i) const { return nodes_.at(i); }
  const AuxiliaryElements& aux() const noexcept { return aux_; }
  const KeyVault& vault() const noexcept { return *vault_; }
  const ByteLedger& ledger() const noexcept { return ledger_; }
  const std::vector<std::string>& transcript() const noexcept { return transcript_; }

  /// Test-harness handle: direct mutable access to a node, bypassing the ledger.
  NodeState& harness_node(std::uint32_t i) { return nodes_.at(i); }

  /// Challenge -> proof -> verdict between the auditor and one node.
  AuditOutcome run_audit_round(std::uint32_t node, std::size_t count);

  /// Sends a challenge from `requester` to a node and returns its answer.
  /// Node-side faults apply.
  Proof challenge_node(const Party& requester, std::uint32_t node, const Challenge& chal);

  void inject_fault(std::uint32_t node, const FaultDescriptor& fault);
  NodeSnapshot snapshot(std::uint32_t node) const;

  /// Drops the node's data, rebuilds it from helpers and refreshes both manifests.
  RepairReport fail_and_repair(std::uint32_t node, RepairMode mode);

  /// Blocks currently held by the given nodes (harness access, not metered).
  std::vector<CodedBlock> harness_blocks(std::span<const std::uint32_t> nodes) const;

  /// Writes or reads the complete simulation state.
  void save(const std::filesystem::path& dir) const;
  static Cluster load(const std::filesystem::path& dir);

  /// Digest of every node store, both manifests and all RNG states.
  std::string state_digest() const;

 private:
  friend struct ClusterAccess;
  Cluster() = default;

  wire::Bytes send(const Party& from, const Party& to, ByteCategory cat, std::string_view kind, wire::Bytes payload);
  void note(std::string_view kind, const std::string& detail);
  Proof node_answer(std::uint32_t node, const Challenge& chal);
  const SpaceMac& tpa_mac() const { return *tpa_mac_; }
  const SpaceMac& user_mac() const { return *user_mac_; }

  ClusterConfig config_;
  FileManifest user_manifest_;
  FileManifest tpa_manifest_;
  std::vector<NodeState> nodes_;
  AuxiliaryElements aux_;
  std::unique_ptr<KeyVault> vault_;
  std::unique_ptr<SpaceMac> tpa_mac_;
  std::unique_ptr<SpaceMac> user_mac_;
  Rng user_rng_ = Rng::seeded(0);
  Rng tpa_rng_ = Rng::seeded(0);
  ByteLedger ledger_;
  std::vector<std::string> transcript_;
  std::uint64_t step_ = 0;
};

/// Runs a scenario document (params, layout, fault and audit schedule) and
/// returns line-delimited result records followed by the transcript.
struct ScenarioResult {
  std::vector<std::string> records;
  std::vector<std::string> transcript;
  bool all_expectations_met = true;
  std::size_t rejections = 0;
};
ScenarioResult run_scenario(const std::string& document);

}  // namespace ncaudit
