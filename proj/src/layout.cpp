#include "ncaudit/layout.hpp"

#include <optional>
#include <stdexcept>

#include "ncaudit/linalg.hpp"

namespace ncaudit {
namespace {

SymbolVector row_of(std::initializer_list<int> sources, std::size_t m) {
  SymbolVector r(m, 0);
  for (int s : sources) r[static_cast<std::size_t>(s - 1)] = 1;
  return r;
}

}  // namespace

CodeLayout evenodd4_layout(const SystemParams& params) {
  if (params.m != 4 || params.nodes != 4 || params.per_node != 2 || params.helpers != 3 ||
      params.repair_per_helper != 1) {
    throw std::invalid_argument("evenodd4 layout needs m=4, nodes=4, per_node=2, helpers=3, repair_per_helper=1");
  }
  CodeLayout layout;
  layout.name = "evenodd4";
  layout.node_coeffs = {
      {row_of({1}, 4), row_of({2}, 4)},
      {row_of({3}, 4), row_of({4}, 4)},
      {row_of({1, 3}, 4), row_of({2, 4}, 4)},
      {row_of({2, 3}, 4), row_of({1, 2, 4}, 4)},
  };
  return layout;
}

CodeLayout random_functional_layout(const SystemParams& params, Rng& rng) {
  params.validate();
  CodeLayout layout;
  layout.name = "random_functional";
  for (int attempt = 0; attempt < 64; ++attempt) {
    layout.node_coeffs.assign(params.nodes, {});
    std::vector<SymbolVector> all;
    for (auto& node : layout.node_coeffs) {
      for (std::size_t k = 0; k < params.per_node; ++k) {
        node.push_back(rng.symbols(params.m));
        all.push_back(node.back());
      }
    }
    if (rank(all, params.m) == params.m) return layout;
  }
  throw std::runtime_error("random_functional_layout: could not reach rank m");
}

CodeLayout make_layout(const std::string& name, const SystemParams& params, Rng& rng) {
  if (name == "evenodd4") return evenodd4_layout(params);
  if (name == "random_functional") return random_functional_layout(params, rng);
  throw std::invalid_argument("unknown layout: " + name);
}

bool nodes_decodable(const std::vector<std::vector<SymbolVector>>& node_coeffs, std::span<const std::size_t> nodes,
                     std::size_t m) {
  std::vector<SymbolVector> rows;
  for (auto i : nodes) rows.insert(rows.end(), node_coeffs.at(i).begin(), node_coeffs.at(i).end());
  return rank(rows, m) == m;
}

std::optional<std::size_t> min_decoding_nodes(const std::vector<std::vector<SymbolVector>>& node_coeffs,
                                              std::size_t m) {
  const std::size_t n = node_coeffs.size();
  if (n > 20) throw std::invalid_argument("min_decoding_nodes: too many nodes to enumerate");
  for (std::size_t k = 1; k <= n; ++k) {
    bool all = true;
    for (std::uint32_t mask = 0; mask < (1u << n) && all; ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
      std::vector<std::size_t> nodes;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask >> i & 1u) nodes.push_back(i);
      }
      all = nodes_decodable(node_coeffs, nodes, m);
    }
    if (all) return k;
  }
  return std::nullopt;
}

}  // namespace ncaudit
