#pragma once

#include <string>
#include <vector>

#include "ncaudit/audit.hpp"
#include "ncaudit/layout.hpp"
#include "ncaudit/prf.hpp"
#include "ncaudit/rng.hpp"

namespace ncaudit::testing {

inline Prf test_prf(std::uint8_t fill = 1, std::size_t bytes = 16) {
  std::vector<std::uint8_t> k(bytes, fill);
  k.back() = static_cast<std::uint8_t>(fill + 0x40);
  return Prf(PrfKey(std::move(k)), PrfMode::test);
}

inline SystemParams evenodd_params(std::uint32_t n = 64, std::uint32_t ell = 1) {
  SystemParams p;
  p.n = n;
  p.m = 4;
  p.nodes = 4;
  p.per_node = 2;
  p.helpers = 3;
  p.repair_per_helper = 1;
  p.ell = ell;
  return p;
}

inline std::vector<std::uint8_t> random_bytes(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> out(n);
  rng.fill(out);
  return out;
}

inline NodeStore store_of(const SetupResult& s, std::size_t node) { return s.nodes.at(node); }

}  // namespace ncaudit::testing
