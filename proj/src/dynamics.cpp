#include "ncaudit/dynamics.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cluster_access.hpp"
#include "ncaudit/layout.hpp"
#include "ncaudit/linalg.hpp"

namespace ncaudit {
namespace {

using A = ClusterAccess;

SymbolVector unit(std::size_t m, std::size_t j) {
  SymbolVector v(m, 0);
  v[j] = 1;
  return v;
}

wire::Bytes text_bytes(const std::string& s) { return {s.begin(), s.end()}; }

// Sends the user's manifest to the auditor, who keeps its own delta log.
void sync_tpa(Cluster& c, std::string_view kind) {
  auto& tpa = A::tpa_manifest(c);
  const auto bytes = A::send(c, Party::user(), Party::tpa(), ByteCategory::coefficient, kind,
                             text_bytes(A::user_manifest(c).serialize()));
  auto deltas = std::move(tpa.deltas);
  tpa = FileManifest::parse(std::string(bytes.begin(), bytes.end()));
  tpa.deltas = std::move(deltas);
}

// Block k of `node` and its tag, through the wire.
StoredBlock fetch(Cluster& c, std::uint32_t from, std::uint32_t to, std::size_t k, std::size_t ell) {
  const auto& slot = A::nodes(c).at(from).store.at(k);
  if (!slot) throw std::runtime_error("dynamics: contributing block is missing");
  const auto b = A::send(c, Party::node(from), Party::node(to), ByteCategory::data_block, "append_block_transfer",
                         wire::encode_block(slot->block));
  const auto t = A::send(c, Party::node(from), Party::node(to), ByteCategory::tag, "append_tag_transfer",
                         wire::encode_tag(slot->tag));
  return {wire::decode_block(b), wire::decode_tag(t, ell)};
}

bool is_live(const FileManifest& mf, std::uint32_t source) {
  return std::any_of(mf.mapping.entries.begin(), mf.mapping.entries.end(),
                     [&](const auto& e) { return e && *e == source; });
}

}  // namespace

AppendPlacement evenodd4_append_placement() {
  auto row = [](std::initializer_list<int> sources) {
    SymbolVector r(5, 0);
    for (int s : sources) r[static_cast<std::size_t>(s - 1)] = 1;
    return r;
  };
  return {
      {1, {row({3}), row({4}), row({5})}},
      {2, {row({1, 3}), row({2, 4}), row({5})}},
      {3, {row({3}), row({1, 4}), row({2, 5})}},
  };
}

AppendReport append_block(Cluster& cluster, std::span<const std::uint8_t> payload, const AppendPlacement& placement) {
  auto& mf = A::user_manifest(cluster);
  auto& nodes = A::nodes(cluster);
  const std::size_t n = mf.params.n;
  const std::size_t m_old = mf.params.m;
  const std::size_t ell = mf.params.ell;
  for (const auto& [node, rows] : placement) {
    if (node >= nodes.size()) throw std::out_of_range("append_block: placement names an unknown node");
    for (const auto& r : rows) {
      if (r.size() != m_old + 1) throw std::invalid_argument("append_block: placement rows must have length m+1");
    }
  }

  AppendReport report;
  report.source = static_cast<std::uint32_t>(m_old);
  const CodedBlock b_star = make_source_block(payload, n, m_old + 1, m_old, A::user_rng(cluster));
  report.tag = A::user_mac(cluster).mac(b_star);

  // Every plan is made against the pre-append state of all nodes.
  std::map<std::uint32_t, NodeStore> rebuilt;
  for (const auto& [node, rows] : placement) {
    std::vector<std::uint32_t> contributors{node};
    std::vector<SymbolVector> basis = mf.rows(node);
    auto expressible = [&] {
      return std::all_of(rows.begin(), rows.end(), [&](const SymbolVector& r) {
        return express(basis, std::span(r).first(m_old)).has_value();
      });
    };
    for (std::uint32_t other = 0; other < nodes.size() && !expressible(); ++other) {
      if (other == node) continue;
      contributors.push_back(other);
      basis.insert(basis.end(), mf.rows(other).begin(), mf.rows(other).end());
    }
    if (!expressible()) throw std::invalid_argument("append_block: placement row outside the stored span");

    std::vector<SymbolVector> coeffs;
    std::set<std::size_t> needed;
    for (const auto& r : rows) {
      coeffs.push_back(*express(basis, std::span(r).first(m_old)));
      for (std::size_t i = 0; i < coeffs.back().size(); ++i) {
        if (coeffs.back()[i] != 0) needed.insert(i);
      }
    }

    // Gather the blocks this node combines: its own, and transfers from contributors.
    std::vector<StoredBlock> inputs(basis.size());
    std::size_t offset = 0;
    for (auto src : contributors) {
      const std::size_t count = mf.rows(src).size();
      for (std::size_t k = 0; k < count; ++k) {
        if (!needed.count(offset + k)) continue;
        if (src == node) {
          const auto& slot = nodes[node].store.at(k);
          if (!slot) throw std::runtime_error("append_block: node is missing a block it must combine");
          inputs[offset + k] = *slot;
        } else {
          inputs[offset + k] = fetch(cluster, src, node, k, ell);
        }
        inputs[offset + k].block.extend_coeffs(1);
      }
      offset += count;
    }

    const bool needs_new =
        std::any_of(rows.begin(), rows.end(), [&](const SymbolVector& r) { return r[m_old] != 0; });
    StoredBlock star{b_star, report.tag};
    if (needs_new) {
      const auto b = A::send(cluster, Party::user(), Party::node(node), ByteCategory::data_block, "append_new_block",
                             wire::encode_block(b_star));
      const auto t = A::send(cluster, Party::user(), Party::node(node), ByteCategory::tag, "append_new_tag",
                             wire::encode_tag(report.tag));
      star = {wire::decode_block(b), wire::decode_tag(t, ell)};
    }

    NodeStore out;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      CodedBlock block(n, m_old + 1);
      TagVector tag(ell);
      for (auto i : needed) {
        const Symbol c = coeffs[r][i];
        if (c == 0) continue;
        gf::axpy(block.symbols(), c, inputs[i].block.symbols());
        gf::axpy(tag.values, c, inputs[i].tag.values);
      }
      const Symbol a_star = rows[r][m_old];
      if (a_star != 0) {
        gf::axpy(block.symbols(), a_star, star.block.symbols());
        gf::axpy(tag.values, a_star, star.tag.values);
      }
      out.emplace_back(StoredBlock{std::move(block), std::move(tag)});
    }
    rebuilt[node] = std::move(out);
    report.changed_nodes.push_back(node);
  }

  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (auto it = rebuilt.find(i); it != rebuilt.end()) {
      nodes[i].store = std::move(it->second);
      continue;
    }
    A::send(cluster, Party::user(), Party::node(i), ByteCategory::control, "append_extend",
            {static_cast<std::uint8_t>(1)});
    for (auto& slot : nodes[i].store) {
      if (slot) slot->block.extend_coeffs(1);
    }
  }

  mf.params.m = static_cast<std::uint32_t>(m_old + 1);
  for (std::uint32_t i = 0; i < mf.node_coeffs.size(); ++i) {
    if (auto it = placement.find(i); it != placement.end()) {
      mf.node_coeffs[i] = it->second;
    } else {
      for (auto& row : mf.node_coeffs[i]) row.push_back(0);
    }
  }
  mf.source_lengths.push_back(static_cast<std::uint32_t>(payload.size()));
  mf.mapping.entries.emplace_back(static_cast<std::uint32_t>(m_old));
  sync_tpa(cluster, "append_coeffs");
  A::note(cluster, "append", "source " + std::to_string(m_old + 1));
  return report;
}

UpdateReport update_block(Cluster& cluster, std::uint32_t source, std::span<const std::uint8_t> payload,
                          const UpdateOptions& options) {
  auto& mf = A::user_manifest(cluster);
  auto& nodes = A::nodes(cluster);
  const std::size_t n = mf.params.n;
  const std::size_t m = mf.params.m;
  const std::size_t ell = mf.params.ell;
  if (source >= m || !is_live(mf, source)) throw std::invalid_argument("update_block: source block is not live");
  if (payload.size() > n - 2) throw std::length_error("update_block: payload longer than n-2");

  // Lexicographically first node set whose rows express e_j.
  const auto target = unit(m, source);
  std::vector<std::uint32_t> helpers;
  SymbolVector coeffs;
  for (std::size_t s = 1; s <= nodes.size() && helpers.empty(); ++s) {
    std::vector<std::size_t> idx(s);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    while (true) {
      std::vector<SymbolVector> rows;
      for (auto i : idx) rows.insert(rows.end(), mf.rows(i).begin(), mf.rows(i).end());
      if (auto c = express(rows, target)) {
        helpers.assign(idx.begin(), idx.end());
        coeffs = std::move(*c);
        break;
      }
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == nodes.size() - s + (i - 1)) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t k = i; k < s; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  if (helpers.empty()) throw std::invalid_argument("update_block: source block not expressible from stored blocks");

  UpdateReport report;
  report.delta.source = source;

  // The user rebuilds t_{b_j} from downloaded tags plus the running delta.
  TagVector old_tag(ell);
  std::map<std::uint32_t, CodedBlock> partials;
  std::size_t offset = 0;
  for (auto h : helpers) {
    const std::size_t count = mf.rows(h).size();
    CodedBlock partial(n, m);
    bool any = false;
    for (std::size_t k = 0; k < count; ++k) {
      const Symbol c = coeffs[offset + k];
      if (c == 0) continue;
      const auto& slot = nodes[h].store.at(k);
      if (!slot) throw std::runtime_error("update_block: helper block is missing");
      const auto tb = A::send(cluster, Party::node(h), Party::user(), ByteCategory::tag, "update_tag",
                              wire::encode_tag(slot->tag));
      gf::axpy(old_tag.values, c, wire::decode_tag(tb, ell).values);
      gf::axpy(partial.symbols(), c, slot->block.symbols());
      any = true;
    }
    if (any) {
      report.tag_sources.push_back(h);
      partials.emplace(h, std::move(partial));
    }
    offset += count;
  }
  if (auto it = mf.deltas.find(source); it != mf.deltas.end()) old_tag += it->second;

  const CodedBlock fresh = make_source_block(payload, n, m, source, A::user_rng(cluster));
  report.delta.delta = A::user_mac(cluster).mac(fresh) + old_tag;

  const auto db = A::send(cluster, Party::user(), Party::tpa(), ByteCategory::tag, "update_delta",
                          wire::encode_tag(report.delta.delta));
  const auto delta_at_tpa = wire::decode_tag(db, ell);
  auto accumulate = [&](DeltaLog& log, const TagVector& d) {
    auto [it, inserted] = log.try_emplace(source, TagVector(ell));
    it->second += d;
  };
  accumulate(A::tpa_manifest(cluster).deltas, delta_at_tpa);
  accumulate(mf.deltas, report.delta.delta);
  mf.source_lengths[source] = static_cast<std::uint32_t>(payload.size());
  A::tpa_manifest(cluster).source_lengths[source] = mf.source_lengths[source];

  // Affected nodes rebuild the old b_j from helper partials and patch in place.
  std::map<std::uint32_t, NodeStore> patched;
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    const auto& rows = mf.rows(i);
    if (std::none_of(rows.begin(), rows.end(), [&](const SymbolVector& r) { return r[source] != 0; })) continue;
    const auto nb = A::send(cluster, Party::user(), Party::node(i), ByteCategory::data_block, "update_new_block",
                            wire::encode_block(fresh));
    const CodedBlock received = wire::decode_block(nb);
    if (std::find(options.skip_patch_nodes.begin(), options.skip_patch_nodes.end(), i) !=
        options.skip_patch_nodes.end()) {
      continue;
    }
    CodedBlock diff = received;
    for (const auto& [h, partial] : partials) {
      if (h == i) {
        gf::add_into(diff.symbols(), partial.symbols());
        continue;
      }
      const auto pb = A::send(cluster, Party::node(h), Party::node(i), ByteCategory::data_block, "update_partial",
                              wire::encode_block(partial));
      gf::add_into(diff.symbols(), wire::decode_block(pb).symbols());
    }
    NodeStore store = nodes[i].store;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k][source] == 0 || !store[k]) continue;
      gf::axpy(store[k]->block.symbols(), rows[k][source], diff.symbols());
    }
    patched[i] = std::move(store);
    report.patched_nodes.push_back(i);
  }
  for (auto& [i, store] : patched) nodes[i].store = std::move(store);
  A::note(cluster, "update", "source " + std::to_string(source + 1));
  return report;
}

bool verify_with_deltas(const SpaceMac& mac, const FileManifest& manifest, const DeltaLog& deltas,
                        const Challenge& chal, const Proof& proof, VerifyStats* stats) {
  return detail::verify_proof_core(mac, manifest, &deltas, chal, proof, stats);
}

std::uint32_t insert_block(Cluster& cluster, std::size_t pos, std::span<const std::uint8_t> payload,
                           const std::optional<AppendPlacement>& placement) {
  auto& mf = A::user_manifest(cluster);
  if (pos > mf.mapping.entries.size()) throw std::out_of_range("insert_block: position out of range");
  AppendPlacement chosen;
  if (placement) {
    chosen = *placement;
  } else {
    const std::size_t m = mf.params.m;
    const std::size_t nodes = mf.node_count();
    const std::size_t k = min_decoding_nodes(mf.node_coeffs, m).value_or(nodes);
    for (std::uint32_t i = 0; i < std::min(nodes, nodes - k + 1); ++i) {
      auto rows = mf.rows(i);
      for (auto& r : rows) r.push_back(0);
      rows.push_back(unit(m + 1, m));
      chosen[i] = std::move(rows);
    }
  }
  const auto report = append_block(cluster, payload, chosen);
  auto move_entry = [&](IndexMapping& map) {
    auto entry = map.entries.back();
    map.entries.pop_back();
    map.entries.insert(map.entries.begin() + static_cast<std::ptrdiff_t>(pos), entry);
  };
  move_entry(mf.mapping);
  A::send(cluster, Party::user(), Party::tpa(), ByteCategory::control, "insert_mapping",
          text_bytes(std::to_string(pos)));
  move_entry(A::tpa_manifest(cluster).mapping);
  return report.source;
}

void delete_block(Cluster& cluster, std::size_t pos) {
  auto& mf = A::user_manifest(cluster);
  if (pos >= mf.mapping.entries.size()) throw std::out_of_range("delete_block: position out of range");
  const auto entry = mf.mapping.entries[pos];
  if (!entry) throw std::logic_error("delete_block: position already deleted");
  update_block(cluster, *entry, {});
  mf.source_lengths[*entry] = 0;
  mf.mapping.entries[pos].reset();
  auto& tpa = A::tpa_manifest(cluster);
  A::send(cluster, Party::user(), Party::tpa(), ByteCategory::control, "delete_mapping",
          text_bytes(std::to_string(pos)));
  tpa.source_lengths[*entry] = 0;
  tpa.mapping.entries[pos].reset();
}

}  // namespace ncaudit
