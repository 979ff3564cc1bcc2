#include "ncaudit/bench.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

#include "json.hpp"
#include "ncaudit/audit.hpp"

namespace ncaudit::bench {
namespace {

Timing summarize(std::vector<double> samples) {
  Timing t;
  if (samples.empty()) return t;
  t.mean_ms = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
  std::sort(samples.begin(), samples.end());
  const std::size_t mid = samples.size() / 2;
  t.median_ms = samples.size() % 2 ? samples[mid] : (samples[mid - 1] + samples[mid]) / 2;
  return t;
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

Report run(const Config& config) {
  if (config.n < 4 || config.m < 1 || config.challenge < 1 || config.ell < 1 || config.trials < 1) {
    throw std::invalid_argument("bench: n >= 4 and positive m, challenge, ell, trials required");
  }
  SystemParams params;
  params.n = config.n;
  params.m = config.m;
  params.nodes = 1;
  params.per_node = config.challenge;
  params.helpers = 1;
  params.repair_per_helper = 1;
  params.ell = config.ell;
  params.lambda_bits = config.lambda_bits;

  Rng rng = Rng::seeded(config.seed);
  const auto keys = keygen(params, rng, config.mode);
  const std::string file_id = "bench";
  const SpaceMac mac(keys.k_v, file_id, params.ell);

  std::vector<CodedBlock> sources;
  std::vector<TagVector> source_tags;
  for (std::uint32_t i = 0; i < params.m; ++i) {
    const auto payload = rng.symbols(params.n - 2);
    sources.push_back(make_source_block(payload, params.n, params.m, i, rng));
    source_tags.push_back(mac.mac(sources.back()));
  }

  // Each stored block mixes two sources; the node holds C of them.
  FileManifest mf;
  mf.file_id = file_id;
  mf.params = params;
  mf.source_lengths.assign(params.m, params.n - 2);
  mf.mapping = IndexMapping::identity(params.m);
  mf.node_coeffs.resize(1);
  NodeStore store;
  for (std::uint32_t k = 0; k < config.challenge; ++k) {
    SymbolVector row(params.m, 0);
    row[k % params.m] ^= rng.nonzero_symbol();
    row[(k + config.challenge) % params.m] ^= rng.nonzero_symbol();
    CodedBlock block(params.n, params.m);
    TagVector tag(params.ell);
    for (std::uint32_t j = 0; j < params.m; ++j) {
      if (row[j] == 0) continue;
      gf::axpy(block.symbols(), row[j], sources[j].symbols());
      gf::axpy(tag.values, row[j], source_tags[j].values);
    }
    mf.node_coeffs[0].push_back(std::move(row));
    store.emplace_back(StoredBlock{std::move(block), std::move(tag)});
  }
  const auto aux = ncrypt_setup(keys.k_e, mac, params.n);

  Report report;
  report.config = config;
  report.expected_gen_muls = std::uint64_t{config.challenge} * config.n;
  report.expected_verify_muls =
      std::uint64_t{config.challenge} * config.m + std::uint64_t{config.ell} * (config.n + config.m);
  report.proof_bytes = proof_bytes(params);
  report.overhead_ratio = encryption_overhead_ratio(params);
  SystemParams at80 = params;
  at80.lambda_bits = 80;
  report.overhead_ratio_80 = encryption_overhead_ratio(at80);

  // Warm the r-vector cache so verification timing excludes key derivation.
  for (std::uint32_t j = 1; j <= params.ell; ++j) mac.r_vector(j, params.n + params.m);

  std::vector<double> gen_ms;
  std::vector<double> verify_ms;
  for (std::size_t t = 0; t < config.trials; ++t) {
    const auto chal = gen_challenge(mf, 0, config.challenge, rng);
    const Mask mask = fresh_mask(keys.k_e, file_id, aux, params.lambda_bits, rng);
    GenProofOptions opt;
    opt.precomputed = &mask;
    opt.lambda_bits = params.lambda_bits;
    ProofStats ps;
    auto start = std::chrono::steady_clock::now();
    const Proof proof = gen_proof(store, chal, keys.k_e, aux, rng, opt, &ps);
    gen_ms.push_back(ms_since(start));

    VerifyStats vs;
    start = std::chrono::steady_clock::now();
    const bool ok = verify_proof(mac, mf, chal, proof, &vs);
    verify_ms.push_back(ms_since(start));

    report.all_accepted = report.all_accepted && ok;
    report.gen_block_muls = ps.block_muls;
    report.gen_tag_muls = ps.tag_muls;
    report.verify_muls = vs.muls;
  }
  report.gen = summarize(std::move(gen_ms));
  report.verify = summarize(std::move(verify_ms));
  return report;
}

std::string to_json(const Report& r) {
  nlohmann::ordered_json doc{
      {"record", "bench"},
      {"n", r.config.n},
      {"m", r.config.m},
      {"challenge", r.config.challenge},
      {"ell", r.config.ell},
      {"lambda_bits", r.config.lambda_bits},
      {"trials", r.config.trials},
      {"gen_proof_median_ms", r.gen.median_ms},
      {"gen_proof_mean_ms", r.gen.mean_ms},
      {"verify_proof_median_ms", r.verify.median_ms},
      {"verify_proof_mean_ms", r.verify.mean_ms},
      {"gen_proof_muls", r.gen_block_muls},
      {"gen_proof_muls_expected", r.expected_gen_muls},
      {"gen_proof_tag_muls", r.gen_tag_muls},
      {"verify_proof_muls", r.verify_muls},
      {"verify_proof_muls_expected", r.expected_verify_muls},
      {"proof_bytes", r.proof_bytes},
      {"overhead_ratio", r.overhead_ratio},
      {"overhead_ratio_lambda80", r.overhead_ratio_80},
      {"all_accepted", r.all_accepted},
  };
  return doc.dump();
}

}  // namespace ncaudit::bench
