#include "ncaudit/audit.hpp"

#include <algorithm>
#include <numeric>

#include "ncaudit/kernels.hpp"

namespace ncaudit {

KeyMaterial keygen(const SystemParams& params, Rng& rng, PrfMode mode) {
  auto k_e = PrfKey::generate(params.lambda_bits, rng);
  auto k_v = PrfKey::generate(params.lambda_bits, rng);
  return {Prf(std::move(k_v), mode), Prf(std::move(k_e), mode)};
}

TagVector taggen(std::span<const Symbol> coeffs, std::span<const TagVector> source_tags) {
  if (coeffs.size() != source_tags.size()) throw std::invalid_argument("taggen: coefficient count != m");
  std::vector<const TagVector*> ptrs;
  ptrs.reserve(source_tags.size());
  for (const auto& t : source_tags) ptrs.push_back(&t);
  return combine_tags(std::span<const TagVector* const>(ptrs), coeffs);
}

SetupResult setup_file(std::span<const std::uint8_t> file, const SystemParams& params, const std::string& file_id,
                       const KeyMaterial& keys, const CodeLayout& layout, Rng& rng) {
  params.validate();
  if (layout.node_coeffs.size() != params.nodes) throw std::invalid_argument("setup_file: layout node count != N");
  for (const auto& node : layout.node_coeffs) {
    if (node.size() != params.per_node) throw std::invalid_argument("setup_file: layout blocks per node != M");
    for (const auto& row : node) {
      if (row.size() != params.m) throw std::invalid_argument("setup_file: layout row length != m");
    }
  }
  SetupResult out;
  auto split = make_source_blocks(file, params, rng);
  const SpaceMac mac(keys.k_v, file_id, params.ell);
  for (const auto& b : split.blocks) out.source_tags.push_back(mac.mac(b));

  out.nodes.resize(params.nodes);
  for (std::size_t i = 0; i < params.nodes; ++i) {
    for (const auto& row : layout.node_coeffs[i]) {
      StoredBlock sb{combine_blocks(std::span<const CodedBlock>(split.blocks), row), taggen(row, out.source_tags)};
      out.nodes[i].emplace_back(std::move(sb));
    }
  }
  out.aux = ncrypt_setup(keys.k_e, mac, params.n);

  auto& mf = out.manifest;
  mf.file_id = file_id;
  mf.params = params;
  mf.source_lengths = std::move(split.lengths);
  mf.node_coeffs = layout.node_coeffs;
  mf.mapping = IndexMapping::identity(params.m);
  return out;
}

Challenge gen_challenge(const FileManifest& manifest, std::uint32_t node, std::size_t count, Rng& rng) {
  const std::size_t blocks = manifest.rows(node).size();
  if (count < 1 || count > blocks) throw std::out_of_range("gen_challenge: count must be in [1, M]");
  std::vector<std::uint32_t> idx(blocks);
  std::iota(idx.begin(), idx.end(), 0u);
  for (std::size_t i = 0; i < count; ++i) {
    const auto j = i + rng.below(blocks - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(count);
  std::sort(idx.begin(), idx.end());
  Challenge chal{manifest.file_id, node, {}};
  for (auto i : idx) chal.entries.push_back({i, rng.nonzero_symbol()});
  return chal;
}

MissingBlockError::MissingBlockError(std::uint32_t index)
    : std::runtime_error("gen_proof: block " + std::to_string(index) + " is missing"), index_(index) {}

Proof gen_proof(const NodeStore& store, const Challenge& chal, const Prf& k_e, const AuxiliaryElements& aux,
                Rng& rng, const GenProofOptions& options, ProofStats* stats) {
  if (chal.entries.empty()) throw std::invalid_argument("gen_proof: empty challenge");
  const std::size_t n = aux.n;
  const std::size_t ell = aux.ell();

  // Substitutes for lost blocks live here so the spans below stay valid.
  std::vector<SymbolVector> substitutes;
  std::vector<TagVector> substitute_tags;
  substitutes.reserve(chal.entries.size());
  substitute_tags.reserve(chal.entries.size());

  std::vector<std::span<const Symbol>> rows;
  std::vector<const TagVector*> tags;
  std::vector<Symbol> alphas;
  for (const auto& e : chal.entries) {
    const std::optional<StoredBlock>* slot = e.index < store.size() ? &store[e.index] : nullptr;
    if (slot == nullptr || !slot->has_value()) {
      if (options.missing == MissingPolicy::strict) throw MissingBlockError(e.index);
      substitutes.push_back(rng.symbols(n));
      substitute_tags.emplace_back(rng.symbols(ell));
      rows.emplace_back(substitutes.back());
      tags.push_back(&substitute_tags.back());
    } else {
      const auto& sb = **slot;
      if (sb.block.n() != n) throw std::invalid_argument("gen_proof: stored block has wrong n");
      rows.push_back(sb.block.data());
      tags.push_back(&sb.tag);
    }
    alphas.push_back(e.alpha);
  }

  ProofStats local;
  SymbolVector e_hat(n);
  {
    gf::MulCounterScope scope;
    kernels::combine(e_hat, rows, alphas);
    local.block_muls = scope.elapsed();
  }
  Proof proof;
  {
    gf::MulCounterScope scope;
    proof.tag = combine_tags(std::span<const TagVector* const>(tags), alphas);
    local.tag_muls = scope.elapsed();
  }
  {
    gf::MulCounterScope scope;
    const std::span<const Symbol> e_bar(e_hat.data(), n - 2);
    if (options.precomputed != nullptr) {
      proof.ct = encrypt_with_mask(e_bar, *options.precomputed);
    } else {
      proof.ct = encrypt_with_mask(e_bar, fresh_mask(k_e, chal.file_id, aux, options.lambda_bits, rng));
    }
    local.mask_muls = scope.elapsed();
  }
  proof.pad = {e_hat[n - 2], e_hat[n - 1]};
  if (stats != nullptr) *stats = local;
  return proof;
}

namespace detail {

bool verify_proof_core(const SpaceMac& mac, const FileManifest& manifest, const DeltaLog* deltas,
                       const Challenge& chal, const Proof& proof, VerifyStats* stats) {
  const auto& p = manifest.params;
  const std::size_t n = p.n;
  const std::size_t m = p.m;
  const std::size_t ell = p.ell;
  if (proof.ct.c_bar.size() != n - 2 || proof.ct.p.size() != ell || proof.tag.size() != ell) {
    throw MalformedProofError("verify_proof: proof dimensions do not match the parameters");
  }
  if (chal.entries.empty()) throw MalformedProofError("verify_proof: empty challenge");
  const auto& node_rows = manifest.rows(chal.node);

  gf::MulCounterScope scope;
  std::vector<std::span<const Symbol>> rows;
  std::vector<Symbol> alphas;
  for (const auto& e : chal.entries) {
    rows.emplace_back(node_rows.at(e.index));
    alphas.push_back(e.alpha);
  }
  SymbolVector c(n + m);
  std::copy(proof.ct.c_bar.begin(), proof.ct.c_bar.end(), c.begin());
  c[n - 2] = proof.pad[0];
  c[n - 1] = proof.pad[1];
  const std::span<Symbol> aug(c.data() + n, m);
  kernels::combine(aug, rows, alphas);

  TagVector expected = proof.tag;
  expected += TagVector(proof.ct.p);
  if (deltas != nullptr) {
    for (const auto& [j, delta] : *deltas) {
      if (j >= m) throw std::out_of_range("verify_proof: delta for unknown source");
      if (aug[j] != 0) gf::axpy(expected.values, aug[j], delta.values);
    }
  }
  const bool ok = mac.verify(c, expected);
  if (stats != nullptr) stats->muls = scope.elapsed();
  return ok;
}

}  // namespace detail

bool verify_proof(const SpaceMac& mac, const FileManifest& manifest, const Challenge& chal, const Proof& proof,
                  VerifyStats* stats) {
  return detail::verify_proof_core(mac, manifest, nullptr, chal, proof, stats);
}

std::size_t proof_bytes(const SystemParams& params) {
  return (params.n - 2) + params.lambda_bits / 8 + 2 + 2 * std::size_t{params.ell};
}

double encryption_overhead_ratio(const SystemParams& params) {
  return static_cast<double>(params.lambda_bits / 8 + params.ell + 2) / params.n;
}

}  // namespace ncaudit
