#include <gtest/gtest.h>

#include <numeric>

#include "ncaudit/repair.hpp"
#include "ncaudit/linalg.hpp"
#include "support.hpp"

namespace ncaudit {
namespace {

struct Deployment {
  Rng rng;
  KeyMaterial keys;
  SetupResult s;
  Deployment(const SystemParams& p, const std::string& layout, std::uint64_t seed)
      : rng(Rng::seeded(seed)), keys(keygen(p, rng, PrfMode::test)), s(make(p, layout, keys, rng)) {}
  static SetupResult make(const SystemParams& p, const std::string& layout, const KeyMaterial& keys, Rng& rng) {
    const auto l = make_layout(layout, p, rng);
    return setup_file(testing::random_bytes(rng, p.capacity()), p, "file", keys, l, rng);
  }
};

NodeStore rebuild(const Deployment& d, const RepairPlan& plan) {
  std::vector<wire::RepairMessage> msgs;
  for (std::size_t i = 0; i < plan.helpers.size(); ++i) {
    auto part = make_repair_blocks(plan.helpers[i], d.s.nodes[plan.helpers[i]], plan.gamma[i]);
    msgs.insert(msgs.end(), part.begin(), part.end());
  }
  return reconstruct_node(msgs, plan.theta);
}

bool all_subsets_decodable(const std::vector<std::vector<SymbolVector>>& coeffs, std::size_t k, std::size_t m) {
  const std::size_t n = coeffs.size();
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) nodes.push_back(i);
    }
    if (!nodes_decodable(coeffs, nodes, m)) return false;
  }
  return true;
}

TEST(Repair, EvenoddExactRepairOfEveryNode) {
  Deployment d(testing::evenodd_params(32, 2), "evenodd4", 1);
  for (std::uint32_t failed = 0; failed < 4; ++failed) {
    const auto plan = plan_exact_repair(d.s.manifest, failed);
    EXPECT_LE(plan.helpers.size(), 3u);
    for (const auto& g : plan.gamma) EXPECT_EQ(g.size(), 1u);
    EXPECT_EQ(plan.expected_new_coeffs, d.s.manifest.rows(failed));
    EXPECT_EQ(rebuild(d, plan), d.s.nodes[failed]) << "node " << failed + 1;
  }
}

TEST(Repair, NodeFourUsesTheFirstThree) {
  Deployment d(testing::evenodd_params(32, 1), "evenodd4", 2);
  const auto plan = plan_exact_repair(d.s.manifest, 3);
  EXPECT_EQ(plan.helpers, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Repair, PredictedCoefficientsMatchRebuiltBlocks) {
  Deployment d(testing::evenodd_params(32, 1), "random_functional", 3);
  Rng rng = Rng::seeded(4);
  for (std::uint32_t failed = 0; failed < 4; ++failed) {
    const auto plan = plan_functional_repair(d.s.manifest, failed, rng);
    const auto store = rebuild(d, plan);
    ASSERT_EQ(store.size(), plan.expected_new_coeffs.size());
    for (std::size_t k = 0; k < store.size(); ++k) EXPECT_EQ(store[k]->block.coeff_vector(), plan.expected_new_coeffs[k]);
    EXPECT_EQ(repair_block_coeffs(d.s.manifest, plan).size(), plan.helpers.size() * plan.per_helper);
  }
}

TEST(Repair, FunctionalRepairKeepsReliability) {
  for (std::uint64_t seed = 10; seed < 30; ++seed) {
    Deployment d(testing::evenodd_params(16, 1), "evenodd4", seed);
    Rng rng = Rng::seeded(seed);
    auto coeffs = d.s.manifest.node_coeffs;
    ASSERT_TRUE(all_subsets_decodable(coeffs, 2, 4));
    FileManifest mf = d.s.manifest;
    for (int round = 0; round < 5; ++round) {
      const auto failed = static_cast<std::uint32_t>(rng.below(4));
      const auto plan = plan_functional_repair(mf, failed, rng);
      EXPECT_GE(plan.attempts, 1u);
      refresh_manifest(mf, plan, plan.expected_new_coeffs);
      ASSERT_TRUE(all_subsets_decodable(mf.node_coeffs, 2, 4)) << "seed " << seed << " round " << round;
    }
  }
}

TEST(Repair, RefreshRejectsForeignCoefficients) {
  Deployment d(testing::evenodd_params(16, 1), "evenodd4", 5);
  auto plan = plan_exact_repair(d.s.manifest, 1);
  FileManifest mf = d.s.manifest;
  auto wrong = plan.expected_new_coeffs;
  wrong[0][0] ^= 1;
  EXPECT_THROW(refresh_manifest(mf, plan, wrong), std::invalid_argument);
  EXPECT_EQ(mf, d.s.manifest);
}

TEST(Repair, ImpossibleExactRepair) {
  // With one helper allowed, node 4 of the EVENODD layout cannot be rebuilt.
  Deployment d(testing::evenodd_params(16, 1), "evenodd4", 6);
  FileManifest mf = d.s.manifest;
  mf.params.helpers = 1;
  EXPECT_THROW(plan_exact_repair(mf, 3), PlanningError);
  EXPECT_THROW(plan_exact_repair(mf, 9), std::out_of_range);
}

TEST(Repair, RepairedTagsVerify) {
  Deployment d(testing::evenodd_params(32, 3), "evenodd4", 7);
  Rng rng = Rng::seeded(8);
  const SpaceMac mac(d.keys.k_v, "file", 3);
  const auto plan = plan_functional_repair(d.s.manifest, 2, rng);
  for (const auto& slot : rebuild(d, plan)) EXPECT_TRUE(mac.verify(slot->block, slot->tag));
}

}  // namespace
}  // namespace ncaudit
