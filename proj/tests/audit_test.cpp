#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ncaudit/audit.hpp"
#include "ncaudit/linalg.hpp"
#include "support.hpp"

namespace ncaudit {
namespace {

using testing::evenodd_params;

struct Deployment {
  SystemParams params;
  KeyMaterial keys;
  SetupResult setup;
  std::unique_ptr<SpaceMac> mac;

  Deployment(const SystemParams& p, const std::string& layout_name, std::uint64_t seed,
             PrfMode mode = PrfMode::test)
      : params(p), keys(make_keys(p, seed, mode)) {
    Rng rng = Rng::seeded(seed + 1);
    const auto layout = make_layout(layout_name, p, rng);
    const auto file = testing::random_bytes(rng, p.capacity() - 3);
    setup = setup_file(file, p, "file", keys, layout, rng);
    mac = std::make_unique<SpaceMac>(keys.k_v, "file", p.ell);
  }

  static KeyMaterial make_keys(const SystemParams& p, std::uint64_t seed, PrfMode mode) {
    Rng rng = Rng::seeded(seed);
    return keygen(p, rng, mode);
  }
};

TEST(Audit, KeygenDeterministicAndSized) {
  auto p = evenodd_params();
  Rng a = Rng::seeded(5), b = Rng::seeded(5);
  const auto k1 = keygen(p, a, PrfMode::test);
  const auto k2 = keygen(p, b, PrfMode::test);
  EXPECT_EQ(k1.k_v.key(), k2.k_v.key());
  EXPECT_EQ(k1.k_e.key(), k2.k_e.key());
  EXPECT_NE(k1.k_v.key(), k1.k_e.key());
  p.lambda_bits = 80;
  Rng c = Rng::seeded(6);
  EXPECT_EQ(keygen(p, c, PrfMode::test).k_v.key().bits(), 80u);
}

TEST(Audit, KeygenDistinctAcrossCalls) {
  Rng rng = Rng::seeded(7);
  std::set<std::vector<std::uint8_t>> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto k = keygen(evenodd_params(), rng, PrfMode::test);
    const auto v = k.k_v.key().bytes();
    ASSERT_TRUE(seen.insert({v.begin(), v.end()}).second);
  }
}

TEST(Audit, EvenoddNodeFourContents) {
  Deployment d(evenodd_params(), "evenodd4", 10);
  const auto& node4 = d.setup.nodes[3];
  ASSERT_EQ(node4.size(), 2u);
  EXPECT_EQ(node4[0]->block.coeff_vector(), (SymbolVector{0, 1, 1, 0}));
  EXPECT_EQ(node4[1]->block.coeff_vector(), (SymbolVector{1, 1, 0, 1}));
  const auto& t = d.setup.source_tags;
  EXPECT_EQ(node4[0]->tag, t[1] + t[2]);
  EXPECT_EQ(node4[1]->tag, t[0] + t[1] + t[3]);
  EXPECT_EQ(d.setup.manifest.coefficient_symbols(), 4u * 2u * 4u);
}

TEST(Audit, TaggenMatchesDirectMac) {
  Deployment d(evenodd_params(64, 3), "random_functional", 11);
  for (const auto& node : d.setup.nodes) {
    for (const auto& slot : node) EXPECT_EQ(slot->tag, d.mac->mac(slot->block));
  }
  const auto& t = d.setup.source_tags;
  EXPECT_EQ(taggen(SymbolVector{0, 1, 0, 0}, t), t[1]);
  EXPECT_TRUE(taggen(SymbolVector{0, 0, 0, 0}, t).is_zero());
  EXPECT_THROW(taggen(SymbolVector{1}, t), std::invalid_argument);
}

TEST(Audit, ChallengeShapes) {
  Deployment d(evenodd_params(), "evenodd4", 12);
  Rng rng = Rng::seeded(1);
  const auto all = gen_challenge(d.setup.manifest, 0, 2, rng);
  ASSERT_EQ(all.entries.size(), 2u);
  EXPECT_EQ(all.entries[0].index, 0u);
  EXPECT_EQ(all.entries[1].index, 1u);
  for (const auto& e : all.entries) EXPECT_NE(e.alpha, 0);
  EXPECT_EQ(gen_challenge(d.setup.manifest, 0, 1, rng).entries.size(), 1u);
  EXPECT_THROW(gen_challenge(d.setup.manifest, 0, 0, rng), std::out_of_range);
  EXPECT_THROW(gen_challenge(d.setup.manifest, 0, 3, rng), std::out_of_range);
  Rng a = Rng::seeded(9), b = Rng::seeded(9);
  EXPECT_EQ(gen_challenge(d.setup.manifest, 2, 2, a), gen_challenge(d.setup.manifest, 2, 2, b));
}

TEST(Audit, HonestProofsAccepted) {
  for (const char* layout : {"evenodd4", "random_functional"}) {
    for (std::uint32_t ell : {1u, 2u, 10u}) {
      Deployment d(evenodd_params(48, ell), layout, 13 + ell);
      Rng rng = Rng::seeded(ell);
      for (int round = 0; round < 50; ++round) {
        const auto node = static_cast<std::uint32_t>(rng.below(4));
        const auto chal = gen_challenge(d.setup.manifest, node, 1 + rng.below(2), rng);
        const auto proof = gen_proof(d.setup.nodes[node], chal, d.keys.k_e, d.setup.aux, rng);
        ASSERT_TRUE(verify_proof(*d.mac, d.setup.manifest, chal, proof)) << layout << " ell=" << ell;
      }
    }
  }
}

TEST(Audit, ProductionPrfProofsAccepted) {
  Deployment d(evenodd_params(40, 2), "evenodd4", 14, PrfMode::production);
  Rng rng = Rng::seeded(1);
  const auto chal = gen_challenge(d.setup.manifest, 3, 2, rng);
  EXPECT_TRUE(verify_proof(*d.mac, d.setup.manifest, chal, gen_proof(d.setup.nodes[3], chal, d.keys.k_e, d.setup.aux, rng)));
}

TEST(Audit, TamperedProofRejected) {
  Deployment d(evenodd_params(32, 2), "evenodd4", 15);
  Rng rng = Rng::seeded(2);
  const auto chal = gen_challenge(d.setup.manifest, 1, 2, rng);
  const auto proof = gen_proof(d.setup.nodes[1], chal, d.keys.k_e, d.setup.aux, rng);
  auto bad = proof;
  bad.tag[0] ^= 1;
  EXPECT_FALSE(verify_proof(*d.mac, d.setup.manifest, chal, bad));
  bad = proof;
  bad.pad[1] ^= 1;
  EXPECT_FALSE(verify_proof(*d.mac, d.setup.manifest, chal, bad));
  bad = proof;
  bad.ct.c_bar[0] ^= 1;
  EXPECT_FALSE(verify_proof(*d.mac, d.setup.manifest, chal, bad));
  bad = proof;
  bad.ct.p.pop_back();
  EXPECT_THROW(verify_proof(*d.mac, d.setup.manifest, chal, bad), MalformedProofError);
}

TEST(Audit, CiphertextHidesAggregatedData) {
  Deployment d(evenodd_params(32, 1), "evenodd4", 16);
  Rng rng = Rng::seeded(3);
  const auto chal = gen_challenge(d.setup.manifest, 0, 2, rng);
  const auto proof = gen_proof(d.setup.nodes[0], chal, d.keys.k_e, d.setup.aux, rng);
  CodedBlock e(32, 4);
  for (const auto& entry : chal.entries) gf::axpy(e.symbols(), entry.alpha, d.setup.nodes[0][entry.index]->block.symbols());
  const SymbolVector e_bar(e.payload().begin(), e.payload().end());
  EXPECT_NE(proof.ct.c_bar, e_bar);
  SymbolVector diff = proof.ct.c_bar;
  gf::add_into(diff, e_bar);
  EXPECT_TRUE(express(d.setup.aux.basis, diff).has_value());
  EXPECT_EQ(decrypt(d.keys.k_e, "file", proof.ct, d.setup.aux), e_bar);
}

TEST(Audit, MissingBlockPolicies) {
  Deployment d(evenodd_params(32, 1), "evenodd4", 17);
  Rng rng = Rng::seeded(4);
  auto store = d.setup.nodes[2];
  store[1].reset();
  const auto chal = gen_challenge(d.setup.manifest, 2, 2, rng);
  try {
    gen_proof(store, chal, d.keys.k_e, d.setup.aux, rng);
    FAIL();
  } catch (const MissingBlockError& e) {
    EXPECT_EQ(e.index(), 1u);
  }
  GenProofOptions opt;
  opt.missing = MissingPolicy::substitute_random;
  EXPECT_NO_THROW(gen_proof(store, chal, d.keys.k_e, d.setup.aux, rng, opt));
}

TEST(Audit, SingleCorruptionDetectionRate) {
  // Fresh keys per trial; one corrupted symbol in a challenged block.
  const int trials = 3000;
  int accepted = 0;
  Rng rng = Rng::seeded(18);
  for (int t = 0; t < trials; ++t) {
    Deployment d(evenodd_params(8, 1), "evenodd4", 1000 + static_cast<std::uint64_t>(t));
    auto store = d.setup.nodes[0];
    store[0]->block.symbols()[rng.below(8)] ^= rng.nonzero_symbol();
    const auto chal = gen_challenge(d.setup.manifest, 0, 2, rng);
    accepted += verify_proof(*d.mac, d.setup.manifest, chal, gen_proof(store, chal, d.keys.k_e, d.setup.aux, rng));
  }
  const double p = 2.0 / 256;
  EXPECT_LE(static_cast<double>(accepted) / trials, p + 3 * std::sqrt(p * (1 - p) / trials));
}

TEST(Audit, CostFormulas) {
  SystemParams p = evenodd_params(128, 3);
  p.m = 6;
  p.nodes = 2;
  p.per_node = 5;
  Rng rng = Rng::seeded(19);
  const auto keys = keygen(p, rng, PrfMode::test);
  CodeLayout layout{"custom", {}};
  for (int node = 0; node < 2; ++node) {
    layout.node_coeffs.emplace_back();
    for (int k = 0; k < 5; ++k) layout.node_coeffs.back().push_back(rng.symbols(6));
  }
  const auto s = setup_file(testing::random_bytes(rng, 100), p, "file", keys, layout, rng);
  const SpaceMac mac(keys.k_v, "file", p.ell);
  for (std::size_t c = 1; c <= 5; ++c) {
    const auto chal = gen_challenge(s.manifest, 1, c, rng);
    const auto mask = fresh_mask(keys.k_e, "file", s.aux, 128, rng);
    GenProofOptions opt;
    opt.precomputed = &mask;
    ProofStats ps;
    const auto proof = gen_proof(s.nodes[1], chal, keys.k_e, s.aux, rng, opt, &ps);
    EXPECT_EQ(ps.block_muls, c * p.n);
    EXPECT_EQ(ps.tag_muls, c * p.ell);
    EXPECT_EQ(ps.mask_muls, 0u);
    VerifyStats vs;
    EXPECT_TRUE(verify_proof(mac, s.manifest, chal, proof, &vs));
    EXPECT_EQ(vs.muls, c * p.m + p.ell * (p.n + p.m));
  }
}

TEST(Audit, SizesAndOverhead) {
  SystemParams p;
  p.n = 4096;
  p.ell = 1;
  p.lambda_bits = 80;
  EXPECT_DOUBLE_EQ(encryption_overhead_ratio(p), 13.0 / 4096);
  EXPECT_LT(encryption_overhead_ratio(p), 0.01);
  EXPECT_EQ(proof_bytes(p), 4094u + 10 + 2 + 2);
  p.lambda_bits = 128;
  p.ell = 10;
  EXPECT_EQ(proof_bytes(p), 4094u + 16 + 2 + 20);
}

}  // namespace
}  // namespace ncaudit
