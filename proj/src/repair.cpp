#include "ncaudit/repair.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ncaudit/layout.hpp"
#include "ncaudit/linalg.hpp"

namespace ncaudit {
namespace {

constexpr std::size_t kMaxSubsetChecks = 200000;

bool is_zero(std::span<const Symbol> v) {
  return std::all_of(v.begin(), v.end(), [](Symbol s) { return s == 0; });
}

SymbolVector combine_rows(std::span<const SymbolVector> rows, std::span<const Symbol> coeffs, std::size_t len) {
  SymbolVector out(len, 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (coeffs[i] != 0) gf::axpy(out, coeffs[i], rows[i]);
  }
  return out;
}

// Calls fn on each s-subset of [0, k) in lexicographic order until it returns true.
bool for_each_subset(std::size_t k, std::size_t s, std::size_t& budget,
                     const std::function<bool(const std::vector<std::size_t>&)>& fn) {
  if (s > k) return false;
  std::vector<std::size_t> idx(s);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    if (budget == 0) return false;
    --budget;
    if (fn(idx)) return true;
    std::size_t i = s;
    while (i > 0 && idx[i - 1] == k - s + (i - 1)) --i;
    if (i == 0) return false;
    ++idx[i - 1];
    for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Sequential commitment: each target row not yet covered by committed
// vectors is covered by the smallest set of helpers with spare capacity.
std::optional<std::vector<std::vector<SymbolVector>>> commit_greedy(const FileManifest& manifest,
                                                                    const std::vector<SymbolVector>& targets,
                                                                    const std::vector<std::uint32_t>& candidates,
                                                                    std::size_t q, std::size_t max_helpers) {
  const std::size_t m = manifest.params.m;
  const std::size_t k = candidates.size();
  std::vector<std::vector<SymbolVector>> committed(k);
  std::size_t budget = kMaxSubsetChecks;

  for (const auto& t : targets) {
    std::vector<SymbolVector> flat;
    for (const auto& c : committed) flat.insert(flat.end(), c.begin(), c.end());
    if (express(flat, t)) continue;

    std::size_t used = 0;
    for (const auto& c : committed) used += !c.empty();
    bool done = false;
    for (std::size_t s = 1; s <= k && !done; ++s) {
      done = for_each_subset(k, s, budget, [&](const std::vector<std::size_t>& subset) {
        std::size_t fresh = 0;
        for (auto i : subset) {
          if (committed[i].size() >= q) return false;
          fresh += committed[i].empty();
        }
        if (used + fresh > max_helpers) return false;
        std::vector<SymbolVector> rows = flat;
        for (auto i : subset) {
          const auto& r = manifest.rows(candidates[i]);
          rows.insert(rows.end(), r.begin(), r.end());
        }
        const auto coeffs = express(rows, t);
        if (!coeffs) return false;
        std::size_t offset = flat.size();
        for (auto i : subset) {
          const auto& r = manifest.rows(candidates[i]);
          const auto part = combine_rows(r, std::span(*coeffs).subspan(offset, r.size()), m);
          offset += r.size();
          if (!is_zero(part)) committed[i].push_back(part);
        }
        return true;
      });
      if (budget == 0) break;
    }
    if (!done) return std::nullopt;
  }
  return committed;
}

RepairPlan plan_from_commitments(const FileManifest& manifest, std::uint32_t failed,
                                 const std::vector<std::uint32_t>& candidates,
                                 const std::vector<std::vector<SymbolVector>>& committed, std::size_t q) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!committed[i].empty()) order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return candidates[a] < candidates[b]; });

  RepairPlan plan;
  plan.failed_node = failed;
  plan.per_helper = static_cast<std::uint32_t>(q);
  std::vector<SymbolVector> g_rows;
  for (auto i : order) {
    const auto helper = candidates[i];
    const auto& rows = manifest.rows(helper);
    plan.helpers.push_back(helper);
    std::vector<SymbolVector> gamma_i;
    for (const auto& c : committed[i]) {
      auto gamma = express(rows, c);
      if (!gamma) throw PlanningError("exact repair: committed vector outside helper span");
      gamma_i.push_back(std::move(*gamma));
      g_rows.push_back(c);
    }
    while (gamma_i.size() < q) {
      gamma_i.emplace_back(rows.size(), 0);
      g_rows.emplace_back(manifest.params.m, 0);
    }
    plan.gamma.push_back(std::move(gamma_i));
  }
  for (const auto& t : manifest.rows(failed)) {
    auto theta = express(g_rows, t);
    if (!theta) throw PlanningError("exact repair: target outside repair span");
    plan.theta.push_back(std::move(*theta));
  }
  plan.expected_new_coeffs = predict_new_coeffs(manifest, plan);
  if (plan.expected_new_coeffs != manifest.rows(failed)) throw PlanningError("exact repair: prediction mismatch");
  return plan;
}

std::vector<std::uint32_t> survivors(const FileManifest& manifest, std::uint32_t failed) {
  if (failed >= manifest.node_count()) throw std::out_of_range("repair: unknown node");
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < manifest.node_count(); ++i) {
    if (i != failed) out.push_back(i);
  }
  return out;
}

}  // namespace

std::vector<SymbolVector> repair_block_coeffs(const FileManifest& manifest, const RepairPlan& plan) {
  std::vector<SymbolVector> out;
  for (std::size_t i = 0; i < plan.helpers.size(); ++i) {
    const auto& rows = manifest.rows(plan.helpers[i]);
    for (const auto& gamma : plan.gamma.at(i)) {
      if (gamma.size() != rows.size()) throw std::invalid_argument("repair plan: γ row length != helper M");
      out.push_back(combine_rows(rows, gamma, manifest.params.m));
    }
  }
  return out;
}

std::vector<SymbolVector> predict_new_coeffs(const FileManifest& manifest, const RepairPlan& plan) {
  const auto g = repair_block_coeffs(manifest, plan);
  std::vector<SymbolVector> out;
  for (const auto& theta : plan.theta) {
    if (theta.size() != g.size()) throw std::invalid_argument("repair plan: θ length != P·Q");
    out.push_back(combine_rows(g, theta, manifest.params.m));
  }
  return out;
}

RepairPlan plan_exact_repair(const FileManifest& manifest, std::uint32_t failed_node) {
  auto candidates = survivors(manifest, failed_node);
  auto targets = manifest.rows(failed_node);
  const std::size_t q = manifest.params.repair_per_helper;
  const std::size_t p = manifest.params.helpers;
  Rng shuffler = Rng::seeded(0x5EEDull + failed_node);
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (attempt > 0) {
      std::shuffle(candidates.begin(), candidates.end(), shuffler);
      std::shuffle(targets.begin(), targets.end(), shuffler);
    }
    if (auto committed = commit_greedy(manifest, targets, candidates, q, p)) {
      return plan_from_commitments(manifest, failed_node, candidates, *committed, q);
    }
  }
  throw PlanningError("exact repair: surviving nodes cannot rebuild the failed node's blocks");
}

RepairPlan plan_functional_repair(const FileManifest& manifest, std::uint32_t failed_node, Rng& rng,
                                  std::size_t max_attempts) {
  auto candidates = survivors(manifest, failed_node);
  if (candidates.empty()) throw PlanningError("functional repair: no surviving helpers");
  const std::size_t m = manifest.params.m;
  const std::size_t q = manifest.params.repair_per_helper;
  const std::size_t p = std::min<std::size_t>(manifest.params.helpers, candidates.size());
  const std::size_t n_nodes = manifest.node_count();
  const std::size_t new_blocks = manifest.rows(failed_node).size();

  // Subsets that decode today must keep decoding.
  std::vector<std::uint32_t> must_decode;
  const bool enumerate = n_nodes <= 16;
  if (enumerate) {
    for (std::uint32_t mask = 1; mask < (1u << n_nodes); ++mask) {
      std::vector<std::size_t> nodes;
      for (std::size_t i = 0; i < n_nodes; ++i) {
        if (mask >> i & 1u) nodes.push_back(i);
      }
      if ((mask >> failed_node & 1u) && nodes_decodable(manifest.node_coeffs, nodes, m)) must_decode.push_back(mask);
    }
  }

  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<std::uint32_t> helpers(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(p));
    std::sort(helpers.begin(), helpers.end());

    RepairPlan plan;
    plan.failed_node = failed_node;
    plan.helpers = helpers;
    plan.per_helper = static_cast<std::uint32_t>(q);
    plan.attempts = attempt;
    for (auto h : helpers) {
      std::vector<SymbolVector> gamma_i;
      for (std::size_t j = 0; j < q; ++j) gamma_i.push_back(rng.symbols(manifest.rows(h).size()));
      plan.gamma.push_back(std::move(gamma_i));
    }
    for (std::size_t k = 0; k < new_blocks; ++k) plan.theta.push_back(rng.symbols(p * q));
    plan.expected_new_coeffs = predict_new_coeffs(manifest, plan);

    auto trial = manifest.node_coeffs;
    trial[failed_node] = plan.expected_new_coeffs;
    bool reliable = true;
    if (enumerate) {
      for (auto mask : must_decode) {
        std::vector<std::size_t> nodes;
        for (std::size_t i = 0; i < n_nodes; ++i) {
          if (mask >> i & 1u) nodes.push_back(i);
        }
        if (!nodes_decodable(trial, nodes, m)) {
          reliable = false;
          break;
        }
      }
    } else {
      std::vector<std::size_t> all(n_nodes);
      std::iota(all.begin(), all.end(), std::size_t{0});
      reliable = nodes_decodable(trial, all, m);
    }
    if (reliable) return plan;
  }
  throw PlanningError("functional repair: reliability could not be preserved");
}

std::vector<wire::RepairMessage> make_repair_blocks(std::uint32_t helper_id, const NodeStore& store,
                                                    std::span<const SymbolVector> gamma_i) {
  std::vector<const CodedBlock*> blocks;
  std::vector<const TagVector*> tags;
  for (const auto& slot : store) {
    if (!slot) throw std::runtime_error("make_repair_blocks: helper store is incomplete");
    blocks.push_back(&slot->block);
    tags.push_back(&slot->tag);
  }
  std::vector<wire::RepairMessage> out;
  for (std::size_t j = 0; j < gamma_i.size(); ++j) {
    if (gamma_i[j].size() != blocks.size()) throw std::invalid_argument("make_repair_blocks: γ length != M");
    out.push_back({helper_id, static_cast<std::uint32_t>(j), combine_blocks(std::span<const CodedBlock* const>(blocks), gamma_i[j]),
                   combine_tags(std::span<const TagVector* const>(tags), gamma_i[j])});
  }
  return out;
}

NodeStore reconstruct_node(std::span<const wire::RepairMessage> inputs, std::span<const SymbolVector> theta) {
  std::vector<const CodedBlock*> blocks;
  std::vector<const TagVector*> tags;
  for (const auto& msg : inputs) {
    blocks.push_back(&msg.block);
    tags.push_back(&msg.tag);
  }
  NodeStore out;
  for (const auto& row : theta) {
    if (row.size() != inputs.size()) throw std::invalid_argument("reconstruct_node: θ length != P·Q");
    out.emplace_back(StoredBlock{combine_blocks(std::span<const CodedBlock* const>(blocks), row),
                                 combine_tags(std::span<const TagVector* const>(tags), row)});
  }
  return out;
}

void refresh_manifest(FileManifest& manifest, const RepairPlan& plan, std::span<const SymbolVector> new_coeffs) {
  if (!std::equal(new_coeffs.begin(), new_coeffs.end(), plan.expected_new_coeffs.begin(),
                  plan.expected_new_coeffs.end())) {
    throw std::invalid_argument("refresh_manifest: coefficients differ from the repair plan");
  }
  manifest.node_coeffs.at(plan.failed_node).assign(new_coeffs.begin(), new_coeffs.end());
}

}  // namespace ncaudit
