#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncaudit/blocks.hpp"
#include "ncaudit/rng.hpp"

namespace ncaudit {

/// Coefficient table of a storage code: node_coeffs[node][k] is the
/// combination of source blocks stored as block k of that node.
struct CodeLayout {
  std::string name;
  std::vector<std::vector<SymbolVector>> node_coeffs;
};

/// The 4-node EVENODD example: b1,b2 | b3,b4 | b1+b3,b2+b4 | b2+b3,b1+b2+b4.
/// Throws std::invalid_argument unless m=4, N=4, M=2, P=3, Q=1.
CodeLayout evenodd4_layout(const SystemParams& params);

/// Random coefficients, redrawn until the whole table has rank m.
CodeLayout random_functional_layout(const SystemParams& params, Rng& rng);

/// Builds a layout by name ("evenodd4" or "random_functional").
CodeLayout make_layout(const std::string& name, const SystemParams& params, Rng& rng);

/// True when the rows of the given nodes span F_q^m.
bool nodes_decodable(const std::vector<std::vector<SymbolVector>>& node_coeffs, std::span<const std::size_t> nodes,
                     std::size_t m);

/// Smallest k such that every k-subset of nodes is decodable, or nullopt.
std::optional<std::size_t> min_decoding_nodes(const std::vector<std::vector<SymbolVector>>& node_coeffs,
                                              std::size_t m);

}  // namespace ncaudit
