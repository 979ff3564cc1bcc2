#include "ncaudit/blocks.hpp"

#include <algorithm>
#include <string>

#include "ncaudit/kernels.hpp"
#include "ncaudit/linalg.hpp"
#include "ncaudit/manifest.hpp"

namespace ncaudit {

void SystemParams::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("SystemParams: " + what); };
  if (n < 4) fail("n must be >= 4");
  if (m < 1) fail("m must be >= 1");
  if (nodes < 1) fail("nodes must be >= 1");
  if (per_node < 1) fail("per_node must be >= 1");
  if (std::uint64_t{nodes} * per_node < m) fail("nodes * per_node must be >= m");
  if (helpers < 1) fail("helpers must be >= 1");
  if (repair_per_helper < 1) fail("repair_per_helper must be >= 1");
  if (ell < 1) fail("ell must be >= 1");
  if (lambda_bits < 80 || lambda_bits > 256 || lambda_bits % 8 != 0) fail("lambda_bits must be a multiple of 8 in [80, 256]");
}

UndecodableError::UndecodableError(std::size_t rank, std::size_t needed)
    : std::runtime_error("undecodable: coefficient rank " + std::to_string(rank) + " < " + std::to_string(needed)),
      rank_(rank) {}

CodedBlock::CodedBlock(SymbolVector symbols, std::size_t n) : symbols_(std::move(symbols)), n_(n) {
  if (n_ < 4 || symbols_.size() < n_) throw std::invalid_argument("CodedBlock: bad dimensions");
}

CodedBlock make_source_block(std::span<const std::uint8_t> payload, std::size_t n, std::size_t m,
                             std::size_t index, Rng& rng) {
  if (payload.size() > n - 2) throw std::length_error("make_source_block: payload longer than n-2");
  if (index >= m) throw std::out_of_range("make_source_block: index >= m");
  CodedBlock b(n, m);
  std::copy(payload.begin(), payload.end(), b.payload().begin());
  b.padding()[0] = rng.symbol();
  b.padding()[1] = rng.symbol();
  b.coeffs()[index] = 1;
  return b;
}

SourceSplit make_source_blocks(std::span<const std::uint8_t> file, const SystemParams& params, Rng& rng) {
  params.validate();
  if (file.size() > params.capacity()) throw std::length_error("make_source_blocks: file exceeds m*(n-2) bytes");
  SourceSplit split;
  const std::size_t chunk = params.payload_size();
  for (std::size_t i = 0; i < params.m; ++i) {
    const std::size_t begin = std::min(file.size(), i * chunk);
    const std::size_t len = std::min(chunk, file.size() - begin);
    split.blocks.push_back(make_source_block(file.subspan(begin, len), params.n, params.m, i, rng));
    split.lengths.push_back(static_cast<std::uint32_t>(len));
  }
  return split;
}

CodedBlock combine_blocks(std::span<const CodedBlock* const> blocks, std::span<const Symbol> alphas) {
  if (blocks.empty()) throw std::invalid_argument("combine_blocks: no blocks");
  if (blocks.size() != alphas.size()) throw std::invalid_argument("combine_blocks: coefficient count mismatch");
  const std::size_t n = blocks.front()->n();
  const std::size_t size = blocks.front()->size();
  std::vector<std::span<const Symbol>> rows;
  rows.reserve(blocks.size());
  for (const auto* b : blocks) {
    if (b->n() != n || b->size() != size) throw std::invalid_argument("combine_blocks: dimension mismatch");
    rows.push_back(b->symbols());
  }
  CodedBlock out(n, size - n);
  kernels::combine(out.symbols(), rows, alphas);
  return out;
}

CodedBlock combine_blocks(std::span<const CodedBlock> blocks, std::span<const Symbol> alphas) {
  std::vector<const CodedBlock*> ptrs;
  ptrs.reserve(blocks.size());
  for (const auto& b : blocks) ptrs.push_back(&b);
  return combine_blocks(std::span<const CodedBlock* const>(ptrs), alphas);
}

std::vector<CodedBlock> recover_sources(std::span<const CodedBlock> blocks, std::size_t m) {
  if (blocks.empty()) throw UndecodableError(0, m);
  const std::size_t n = blocks.front().n();
  std::vector<SymbolVector> coeff_rows;
  std::vector<SymbolVector> full_rows;
  for (const auto& b : blocks) {
    if (b.n() != n || b.m() != m) throw std::invalid_argument("recover_sources: dimension mismatch");
    coeff_rows.push_back(b.coeff_vector());
    full_rows.emplace_back(b.symbols().begin(), b.symbols().end());
  }
  const auto result = gaussian_solve(Matrix::from_rows(coeff_rows, m), Matrix::from_rows(full_rows, n + m));
  if (const auto* def = std::get_if<RankDeficient>(&result)) throw UndecodableError(def->rank, m);
  if (std::holds_alternative<Inconsistent>(result)) {
    throw std::runtime_error("recover_sources: blocks are mutually inconsistent");
  }
  const auto& x = std::get<Solved>(result).x;
  std::vector<CodedBlock> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.emplace_back(x.row_vector(i), n);
  return out;
}

std::vector<std::uint8_t> decode_file(std::span<const CodedBlock> blocks, const FileManifest& manifest) {
  const auto sources = recover_sources(blocks, manifest.params.m);
  std::vector<std::uint8_t> file;
  for (const auto& entry : manifest.mapping.entries) {
    if (!entry) continue;
    const auto& src = sources.at(*entry);
    const std::size_t len = manifest.source_lengths.at(*entry);
    file.insert(file.end(), src.payload().begin(), src.payload().begin() + static_cast<std::ptrdiff_t>(len));
  }
  return file;
}

}  // namespace ncaudit
