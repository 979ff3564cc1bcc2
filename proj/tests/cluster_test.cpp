#include <gtest/gtest.h>

#include <filesystem>

#include "json.hpp"
#include "ncaudit/cluster.hpp"
#include "ncaudit/layout.hpp"
#include "support.hpp"

namespace ncaudit {
namespace {

ClusterConfig config(std::uint32_t ell = 1, std::string layout = "evenodd4", std::uint64_t seed = 1) {
  ClusterConfig c;
  c.params = testing::evenodd_params(32, ell);
  c.layout = std::move(layout);
  c.seed = seed;
  c.prf_mode = PrfMode::test;
  return c;
}

std::vector<std::uint8_t> file_of(std::size_t n, std::uint64_t seed = 9) {
  Rng rng = Rng::seeded(seed);
  return testing::random_bytes(rng, n);
}

TEST(Cluster, KeyScopes) {
  auto c = Cluster::spawn(config(), file_of(100));
  EXPECT_NO_THROW(c.vault().k_v(Role::user));
  EXPECT_NO_THROW(c.vault().k_v(Role::tpa));
  EXPECT_THROW(c.vault().k_v(Role::node), KeyScopeError);
  EXPECT_NO_THROW(c.vault().k_e(Role::node));
  EXPECT_THROW(c.vault().k_e(Role::tpa), KeyScopeError);
}

TEST(Cluster, EvenoddContentsAndDecode) {
  const auto file = file_of(120);
  auto c = Cluster::spawn(config(), file);
  const auto layout = evenodd4_layout(c.params());
  for (std::uint32_t i = 0; i < 4; ++i) {
    ASSERT_EQ(c.node(i).store.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(c.node(i).store[k]->block.coeff_vector(), layout.node_coeffs[i][k]);
  }
  for (std::uint32_t a = 0; a < 4; ++a) {
    for (std::uint32_t b = a + 1; b < 4; ++b) {
      const std::uint32_t pair[] = {a, b};
      EXPECT_EQ(decode_file(c.harness_blocks(pair), c.user_manifest()), file);
    }
  }
  EXPECT_EQ(c.user_manifest(), c.tpa_manifest());
}

TEST(Cluster, SetupTrafficIsMetered) {
  auto c = Cluster::spawn(config(2), file_of(100));
  EXPECT_EQ(c.ledger().received(Party::node(0), ByteCategory::data_block), 2 * wire::encode_block(c.node(0).store[0]->block).size());
  EXPECT_EQ(c.ledger().received(Party::node(0), ByteCategory::tag), 2u * 2u);
  EXPECT_GT(c.ledger().received(Party::tpa(), ByteCategory::coefficient), 0u);
  EXPECT_EQ(c.ledger().received(Party::tpa(), ByteCategory::data_block), 0u);
  EXPECT_FALSE(c.transcript().empty());
}

TEST(Cluster, HonestAuditsAccept) {
  for (const char* layout : {"evenodd4", "random_functional"}) {
    auto c = Cluster::spawn(config(2, layout), file_of(100));
    for (int r = 0; r < 40; ++r) {
      const auto out = c.run_audit_round(static_cast<std::uint32_t>(r % 4), 1 + r % 2);
      ASSERT_TRUE(out.accepted) << layout;
      EXPECT_EQ(out.proof_bytes, proof_bytes(c.params()));
    }
  }
}

TEST(Cluster, FaultsAreDetected) {
  auto c = Cluster::spawn(config(10), file_of(100));
  c.inject_fault(1, CorruptSymbol{0, 3, 0x40});
  EXPECT_FALSE(c.run_audit_round(1, 2).accepted);
  c.inject_fault(2, DeleteBlockFault{1});
  EXPECT_FALSE(c.run_audit_round(2, 2).accepted);
  EXPECT_TRUE(c.run_audit_round(0, 2).accepted);
  c.inject_fault(3, LieProbability{1.0});
  EXPECT_FALSE(c.run_audit_round(3, 2).accepted);
}

TEST(Cluster, InvalidFaults) {
  auto c = Cluster::spawn(config(), file_of(10));
  EXPECT_THROW(c.inject_fault(0, CorruptSymbol{0, 0, 0}), InvalidFaultError);
  EXPECT_THROW(c.inject_fault(0, CorruptSymbol{5, 0, 1}), InvalidFaultError);
  EXPECT_THROW(c.inject_fault(0, CorruptSymbol{0, 32, 1}), InvalidFaultError);
  EXPECT_THROW(c.inject_fault(0, LieProbability{1.5}), InvalidFaultError);
  EXPECT_THROW(c.inject_fault(0, ReplayOld{c.snapshot(0)}), InvalidFaultError);
  EXPECT_THROW(c.inject_fault(1, ReplayOld{c.snapshot(0)}), InvalidFaultError);
}

TEST(Cluster, ExactRepairDownloadsNoData) {
  auto c = Cluster::spawn(config(2), file_of(100));
  const auto before = c.node(3).store;
  c.inject_fault(3, CorruptSymbol{1, 0, 1});
  const auto report = c.fail_and_repair(3, RepairMode::exact);
  EXPECT_EQ(report.user_data_block_bytes, 0u);
  EXPECT_GT(report.helper_bytes, 0u);
  EXPECT_TRUE(report.post_audit_accepted);
  EXPECT_EQ(c.node(3).store, before);
  EXPECT_EQ(c.user_manifest().node_coeffs, c.tpa_manifest().node_coeffs);
}

TEST(Cluster, ReplayAfterFunctionalRepairRejected) {
  auto c = Cluster::spawn(config(10), file_of(100));
  const auto snap = c.snapshot(2);
  const auto report = c.fail_and_repair(2, RepairMode::functional);
  EXPECT_TRUE(report.post_audit_accepted);
  EXPECT_EQ(c.node(2).epoch, 1u);
  c.inject_fault(2, ReplayOld{snap});
  for (int r = 0; r < 100; ++r) ASSERT_FALSE(c.run_audit_round(2, 2).accepted);
}

TEST(Cluster, SaveLoadPreservesState) {
  const auto dir = std::filesystem::temp_directory_path() / "ncaudit_cluster_test";
  std::filesystem::remove_all(dir);
  auto c = Cluster::spawn(config(2), file_of(100));
  c.fail_and_repair(1, RepairMode::functional);
  c.save(dir);
  auto d = Cluster::load(dir);
  EXPECT_EQ(c.state_digest(), d.state_digest());
  EXPECT_EQ(c.run_audit_round(1, 2).accepted, d.run_audit_round(1, 2).accepted);
  EXPECT_EQ(c.state_digest(), d.state_digest());
  std::filesystem::remove_all(dir);
}

TEST(Cluster, DeterministicUnderSeed) {
  auto a = Cluster::spawn(config(1, "random_functional", 77), file_of(100));
  auto b = Cluster::spawn(config(1, "random_functional", 77), file_of(100));
  EXPECT_EQ(a.state_digest(), b.state_digest());
  a.run_audit_round(0, 2);
  b.run_audit_round(0, 2);
  EXPECT_EQ(a.transcript(), b.transcript());
  auto other = Cluster::spawn(config(1, "random_functional", 78), file_of(100));
  EXPECT_NE(a.state_digest(), other.state_digest());
}

TEST(Cluster, ScenarioDocument) {
  const nlohmann::json doc = {
      {"params", {{"n", 32}, {"ell", 10}}},
      {"layout", "evenodd4"},
      {"seed", 5},
      {"prf", "test"},
      {"file_size", 60},
      {"steps",
       {{{"op", "audit"}, {"node", 1}, {"count", 2}, {"rounds", 3}, {"expect", "accept"}},
        {{"op", "fault"}, {"node", 2}, {"kind", "corrupt_symbol"}, {"block", 1}, {"position", 4}},
        {{"op", "audit"}, {"node", 2}, {"count", 2}, {"rounds", 3}, {"expect", "reject"}},
        {{"op", "repair"}, {"node", 2}, {"mode", "exact"}},
        {{"op", "audit"}, {"node", 2}, {"count", 2}, {"expect", "accept"}}}}};
  const auto result = run_scenario(doc.dump());
  EXPECT_TRUE(result.all_expectations_met);
  EXPECT_EQ(result.records.size(), 5u);
  EXPECT_EQ(result.rejections, 3u);
  EXPECT_EQ(run_scenario(doc.dump()).transcript, result.transcript);
  EXPECT_THROW(run_scenario(R"({"steps":[{"op":"dance"}]})"), std::invalid_argument);
}

}  // namespace
}  // namespace ncaudit
