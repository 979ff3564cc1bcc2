#include "ncaudit/extractor.hpp"

#include <map>

#include "ncaudit/linalg.hpp"

namespace ncaudit {
namespace {

struct Vote {
  bool decided = false;
  SymbolVector data;  // n symbols: payload then the two pads
};

Challenge scaled(const FileManifest& mf, std::uint32_t node, const SymbolVector& a, Symbol c) {
  Challenge chal{mf.file_id, node, {}};
  for (std::size_t k = 0; k < a.size(); ++k) {
    chal.entries.push_back({static_cast<std::uint32_t>(k), gf::mul(c, a[k])});
  }
  return chal;
}

// R answers to c·a, normalized by 1/c; the strict-majority data vector wins
// if the proof carrying it verifies.
Vote vote(ChallengeOracle& oracle, const FileManifest& mf, std::uint32_t node, const SymbolVector& a,
          const SpaceMac& mac, const Prf& k_e, const AuxiliaryElements& aux, Rng& rng, std::size_t r,
          std::size_t& challenges) {
  std::map<SymbolVector, std::pair<std::size_t, bool>> tally;
  for (std::size_t t = 0; t < r; ++t) {
    const Symbol c = rng.nonzero_symbol();
    const auto chal = scaled(mf, node, a, c);
    const Proof proof = oracle.answer(chal);
    ++challenges;
    bool valid = false;
    SymbolVector data;
    try {
      valid = detail::verify_proof_core(mac, mf, &mf.deltas, chal, proof, nullptr);
      data = decrypt(k_e, mf.file_id, proof.ct, aux);
    } catch (const std::exception&) {
      continue;
    }
    data.insert(data.end(), proof.pad.begin(), proof.pad.end());
    gf::scale(data, gf::inv(c));
    auto& [count, verified] = tally[data];
    ++count;
    verified = verified || valid;
  }
  for (auto& [data, entry] : tally) {
    if (2 * entry.first > r && entry.second) return {true, data};
  }
  return {};
}

}  // namespace

Proof ClusterOracle::answer(const Challenge& chal) { return cluster_.challenge_node(Party::user(), node_, chal); }

ExtractionResult extract_node(ChallengeOracle& oracle, const FileManifest& manifest, std::uint32_t node,
                              const SpaceMac& mac, const Prf& k_e, const AuxiliaryElements& aux, Rng& rng,
                              const ExtractOptions& options) {
  ExtractionResult out;
  const auto& rows = manifest.rows(node);
  const std::size_t big_m = rows.size();
  const std::size_t n = manifest.params.n;
  if (options.repetitions == 0) throw std::invalid_argument("extract_node: repetitions must be positive");

  auto random_vector = [&] {
    SymbolVector a(big_m);
    for (auto& s : a) s = rng.nonzero_symbol();
    return a;
  };

  std::vector<SymbolVector> equations;
  std::vector<SymbolVector> answers;
  std::size_t retries_left = options.retry_budget;
  while (equations.size() < big_m) {
    auto a = random_vector();
    auto trial = equations;
    trial.push_back(a);
    if (rank(trial, big_m) < trial.size()) continue;
    auto v = vote(oracle, manifest, node, a, mac, k_e, aux, rng, options.repetitions, out.challenges);
    if (!v.decided) {
      ++out.failed_equations;
      if (retries_left == 0) {
        out.failure = "no verified majority within the retry budget";
        return out;
      }
      --retries_left;
      continue;
    }
    equations.push_back(std::move(a));
    answers.push_back(std::move(v.data));
  }

  const auto solved = gaussian_solve(Matrix::from_rows(equations), Matrix::from_rows(answers, n));
  const auto* x = std::get_if<Solved>(&solved);
  if (!x) {
    out.failure = "equation system is singular";
    return out;
  }
  std::vector<CodedBlock> blocks;
  for (std::size_t k = 0; k < big_m; ++k) {
    SymbolVector symbols = x->x.row_vector(k);
    symbols.insert(symbols.end(), rows[k].begin(), rows[k].end());
    blocks.emplace_back(std::move(symbols), n);
  }

  // Fresh equation as a consistency check on the solution.
  auto a = random_vector();
  auto v = vote(oracle, manifest, node, a, mac, k_e, aux, rng, options.repetitions, out.challenges);
  while (!v.decided) {
    ++out.failed_equations;
    if (retries_left == 0) {
      out.failure = "confirmation round had no verified majority";
      return out;
    }
    --retries_left;
    a = random_vector();
    v = vote(oracle, manifest, node, a, mac, k_e, aux, rng, options.repetitions, out.challenges);
  }
  const auto combined = combine_blocks(std::span<const CodedBlock>(blocks), a);
  if (!std::equal(v.data.begin(), v.data.end(), combined.data().begin(), combined.data().end())) {
    out.failure = "confirmation round disagrees with the solution";
    return out;
  }
  out.success = true;
  out.blocks = std::move(blocks);
  return out;
}

}  // namespace ncaudit
