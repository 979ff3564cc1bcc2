#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncaudit/blocks.hpp"
#include "ncaudit/layout.hpp"
#include "ncaudit/manifest.hpp"
#include "ncaudit/ncrypt.hpp"
#include "ncaudit/prf.hpp"
#include "ncaudit/rng.hpp"
#include "ncaudit/spacemac.hpp"

namespace ncaudit {

/// k_v authenticates (user and TPA); k_e masks (user and nodes).
struct KeyMaterial {
  Prf k_v;
  Prf k_e;
};

KeyMaterial keygen(const SystemParams& params, Rng& rng, PrfMode mode);

/// A coded block as held by a storage node, with its tag.
struct StoredBlock {
  CodedBlock block;
  TagVector tag;

  bool operator==(const StoredBlock&) const = default;
};

/// One node's view of its storage; nullopt marks a lost block.
using NodeStore = std::vector<std::optional<StoredBlock>>;

struct SetupResult {
  FileManifest manifest;
  std::vector<NodeStore> nodes;
  AuxiliaryElements aux;
  /// Source tags, kept only so tests can cross-check. A real user deletes them.
  std::vector<TagVector> source_tags;
};

/// Splits, tags (Mac on sources, TagGen on coded blocks), encodes with the
/// layout and derives the auxiliary elements.
SetupResult setup_file(std::span<const std::uint8_t> file, const SystemParams& params, const std::string& file_id,
                       const KeyMaterial& keys, const CodeLayout& layout, Rng& rng);

/// t_e = Σ coeffs[i]·source_tags[i].
TagVector taggen(std::span<const Symbol> coeffs, std::span<const TagVector> source_tags);

struct ChallengeEntry {
  std::uint32_t index = 0;  // 0-based block index at the node
  Symbol alpha = 0;

  bool operator==(const ChallengeEntry&) const = default;
};

struct Challenge {
  std::string file_id;
  std::uint32_t node = 0;  // addressee; not part of the wire layout
  std::vector<ChallengeEntry> entries;

  bool operator==(const Challenge&) const = default;
};

/// C distinct indices (sorted) with coefficients drawn from F_q \ {0}.
/// Throws std::out_of_range unless 1 <= count <= M.
Challenge gen_challenge(const FileManifest& manifest, std::uint32_t node, std::size_t count, Rng& rng);

struct Proof {
  Ciphertext ct;
  std::array<Symbol, 2> pad{};
  TagVector tag;

  bool operator==(const Proof&) const = default;
};

enum class MissingPolicy {
  strict,             // throw MissingBlockError
  substitute_random,  // answer with a uniformly random block and tag
};

class MissingBlockError : public std::runtime_error {
 public:
  explicit MissingBlockError(std::uint32_t index);
  std::uint32_t index() const noexcept { return index_; }

 private:
  std::uint32_t index_;
};

struct ProofStats {
  std::uint64_t block_muls = 0;  // data aggregation, C·n
  std::uint64_t tag_muls = 0;    // tag aggregation, C·ℓ
  std::uint64_t mask_muls = 0;   // zero when the mask is precomputed
};

struct GenProofOptions {
  MissingPolicy missing = MissingPolicy::strict;
  const Mask* precomputed = nullptr;
  std::size_t lambda_bits = kDefaultKeyBits;
};

Proof gen_proof(const NodeStore& store, const Challenge& chal, const Prf& k_e, const AuxiliaryElements& aux,
                Rng& rng, const GenProofOptions& options = {}, ProofStats* stats = nullptr);

struct VerifyStats {
  std::uint64_t muls = 0;
};

class MalformedProofError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rebuilds aug(e) from the manifest and checks (c̄ | pads | aug(e)) against t + p.
/// Throws MalformedProofError on dimension mismatch, std::out_of_range on
/// indices the manifest does not hold.
bool verify_proof(const SpaceMac& mac, const FileManifest& manifest, const Challenge& chal, const Proof& proof,
                  VerifyStats* stats = nullptr);

namespace detail {
/// verify_proof with the tag adjusted by Σ_j α̃_j·deltas[j] when deltas is given.
bool verify_proof_core(const SpaceMac& mac, const FileManifest& manifest, const DeltaLog* deltas,
                       const Challenge& chal, const Proof& proof, VerifyStats* stats);
}  // namespace detail

/// Bytes of a serialized proof: (n-2) + λ/8 + 2 + 2ℓ.
std::size_t proof_bytes(const SystemParams& params);
/// Bytes a proof carries beyond the n-2 data symbols it masks, as a fraction of n.
double encryption_overhead_ratio(const SystemParams& params);

}  // namespace ncaudit
