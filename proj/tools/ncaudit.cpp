// ncaudit command-line front end.
//
// Exit codes: 0 success / all accepted, 1 a rejection or failed extraction,
// 2 usage error, 3 internal failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncaudit/bench.hpp"
#include "ncaudit/blocks.hpp"
#include "ncaudit/cluster.hpp"
#include "ncaudit/extractor.hpp"

namespace {

using namespace ncaudit;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint64_t parse_seed(const std::string& text) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used, 16);
  } catch (const std::exception&) {
    throw UsageError("seed must be hexadecimal: " + text);
  }
  if (used != text.size()) throw UsageError("seed must be hexadecimal: " + text);
  return v;
}

std::uint64_t seed_or_env(const std::string& flag, std::uint64_t fallback) {
  if (!flag.empty()) return parse_seed(flag);
  if (const char* env = std::getenv("NCAUDIT_SEED"); env && *env) return parse_seed(env);
  return fallback;
}

std::uint32_t node_index(const Cluster& c, std::uint32_t one_based) {
  if (one_based < 1 || one_based > c.node_count()) {
    throw UsageError("node must be in 1.." + std::to_string(c.node_count()));
  }
  return one_based - 1;
}

struct SetupArgs {
  std::string file, layout = "evenodd4", seed, out;
  std::uint32_t m = 4, n = 4096, nodes = 4, per_node = 2, helpers = 3, q = 1, ell = 1, lambda = 128;
};

int cmd_setup(const SetupArgs& a) {
  const auto file = read_file(a.file);
  ClusterConfig cfg;
  cfg.params = {a.n, a.m, a.nodes, a.per_node, a.helpers, a.q, a.ell, a.lambda};
  cfg.layout = a.layout;
  cfg.seed = seed_or_env(a.seed, 1);
  cfg.prf_mode = prf_mode_from_env();
  try {
    cfg.params.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (file.size() > cfg.params.capacity()) {
    throw UsageError("file of " + std::to_string(file.size()) + " bytes exceeds capacity " +
                     std::to_string(cfg.params.capacity()));
  }
  auto cluster = Cluster::spawn(cfg, file);
  cluster.save(a.out);
  json rec{{"record", "setup"},
           {"out", a.out},
           {"layout", a.layout},
           {"n", a.n},
           {"m", a.m},
           {"nodes", cluster.node_count()},
           {"file_bytes", file.size()},
           {"state_digest", cluster.state_digest()}};
  std::cout << rec.dump() << "\n";
  std::cout << "setup: " << file.size() << " bytes over " << cluster.node_count() << " nodes written to " << a.out
            << "\n";
  return kOk;
}

struct AuditArgs {
  std::string dir;
  std::uint32_t node = 1;
  std::size_t count = 0;
  std::size_t rounds = 1;
};

int cmd_audit(const AuditArgs& a) {
  auto cluster = Cluster::load(a.dir);
  std::vector<std::uint32_t> targets;
  if (a.node == 0) {
    for (std::uint32_t i = 0; i < cluster.node_count(); ++i) targets.push_back(i);
  } else {
    targets.push_back(node_index(cluster, a.node));
  }
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  for (auto node : targets) {
    const std::size_t held = cluster.user_manifest().rows(node).size();
    const std::size_t count = a.count == 0 ? std::min<std::size_t>(300, held) : a.count;
    if (count > held) throw UsageError("count exceeds the node's " + std::to_string(held) + " blocks");
    for (std::size_t r = 0; r < a.rounds; ++r) {
      const auto start = std::chrono::steady_clock::now();
      const auto outcome = cluster.run_audit_round(node, count);
      const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      (outcome.accepted ? accepted : rejected)++;
      json rec{{"record", "audit"},    {"node", node + 1},         {"round", r + 1},
               {"count", count},       {"accepted", outcome.accepted}, {"proof_bytes", outcome.proof_bytes},
               {"verify_muls", outcome.verify.muls}, {"ms", ms}};
      std::cout << rec.dump() << "\n";
    }
  }
  std::cout << "audit: " << accepted << " accepted, " << rejected << " rejected\n";
  return rejected == 0 ? kOk : kRejected;
}

struct CorruptArgs {
  std::string dir, kind = "symbol";
  std::uint32_t node = 1, block = 1, position = 1;
  unsigned delta = 1;
  double epsilon = 0.0;
};

int cmd_corrupt(const CorruptArgs& a) {
  auto cluster = Cluster::load(a.dir);
  const auto node = node_index(cluster, a.node);
  FaultDescriptor fault;
  if (a.kind == "symbol") {
    if (a.delta < 1 || a.delta > 255) throw UsageError("delta must be in 1..255");
    fault = CorruptSymbol{a.block - 1, a.position - 1, static_cast<Symbol>(a.delta)};
  } else if (a.kind == "delete") {
    fault = DeleteBlockFault{a.block - 1};
  } else if (a.kind == "lie") {
    fault = LieProbability{a.epsilon};
  } else {
    throw UsageError("unknown fault kind: " + a.kind);
  }
  if (a.block < 1 || a.position < 1) throw UsageError("block and position are 1-based");
  try {
    cluster.inject_fault(node, fault);
  } catch (const InvalidFaultError& e) {
    throw UsageError(e.what());
  }
  cluster.save(a.dir);
  json rec{{"record", "corrupt"}, {"node", a.node}, {"kind", a.kind}};
  std::cout << rec.dump() << "\n";
  return kOk;
}

struct RepairArgs {
  std::string dir, mode = "exact";
  std::uint32_t node = 1;
};

int cmd_repair(const RepairArgs& a) {
  auto cluster = Cluster::load(a.dir);
  const auto node = node_index(cluster, a.node);
  const auto report = cluster.fail_and_repair(node, a.mode == "functional" ? RepairMode::functional : RepairMode::exact);
  cluster.save(a.dir);
  json helpers = json::array();
  for (auto h : report.plan.helpers) helpers.push_back(h + 1);
  json rec{{"record", "repair"},
           {"node", a.node},
           {"mode", a.mode},
           {"helpers", helpers},
           {"attempts", report.plan.attempts},
           {"helper_bytes", report.helper_bytes},
           {"user_data_block_bytes", report.user_data_block_bytes},
           {"post_audit_accepted", report.post_audit_accepted}};
  std::cout << rec.dump() << "\n";
  return report.post_audit_accepted ? kOk : kRejected;
}

struct ExtractArgs {
  std::string dir, seed;
  std::uint32_t node = 1;
  std::size_t repetitions = 15;
};

int cmd_extract(const ExtractArgs& a) {
  auto cluster = Cluster::load(a.dir);
  const auto node = node_index(cluster, a.node);
  const auto& vault = cluster.vault();
  const SpaceMac mac(vault.k_v(Role::user), cluster.user_manifest().file_id, cluster.params().ell);
  Rng rng = Rng::seeded(seed_or_env(a.seed, 1));
  ClusterOracle oracle(cluster, node);
  ExtractOptions opt;
  opt.repetitions = a.repetitions;
  const auto result =
      extract_node(oracle, cluster.user_manifest(), node, mac, vault.k_e(Role::user), cluster.aux(), rng, opt);
  json rec{{"record", "extract"},
           {"node", a.node},
           {"success", result.success},
           {"blocks", result.blocks.size()},
           {"challenges", result.challenges},
           {"failed_equations", result.failed_equations}};
  if (!result.success) rec["failure"] = result.failure;
  std::cout << rec.dump() << "\n";
  return result.success ? kOk : kRejected;
}

struct BenchArgs {
  std::uint32_t block_kb = 4, m = 500, challenge = 300, ell = 10, lambda = 128;
  std::size_t trials = 100;
  std::string seed;
};

int cmd_bench(const BenchArgs& a) {
  bench::Config cfg;
  cfg.n = a.block_kb * 1024;
  cfg.m = a.m;
  cfg.challenge = a.challenge;
  cfg.ell = a.ell;
  cfg.lambda_bits = a.lambda;
  cfg.trials = a.trials;
  cfg.seed = seed_or_env(a.seed, 1);
  cfg.mode = prf_mode_from_env();
  const auto report = bench::run(cfg);
  std::cout << bench::to_json(report) << "\n";
  std::cout << "gen_proof   median " << report.gen.median_ms << " ms, mean " << report.gen.mean_ms << " ms, "
            << report.gen_block_muls << " muls (C*n = " << report.expected_gen_muls << ")\n";
  std::cout << "verify      median " << report.verify.median_ms << " ms, mean " << report.verify.mean_ms << " ms, "
            << report.verify_muls << " muls (C*m + l(n+m) = " << report.expected_verify_muls << ")\n";
  std::cout << "proof bytes " << report.proof_bytes << ", overhead " << report.overhead_ratio * 100
            << "%, at lambda=80 " << report.overhead_ratio_80 * 100 << "%\n";
  return report.all_accepted ? kOk : kRejected;
}

int cmd_scenario(const std::string& path) {
  const auto bytes = read_file(path);
  ScenarioResult result;
  try {
    result = run_scenario(std::string(bytes.begin(), bytes.end()));
  } catch (const json::exception& e) {
    throw UsageError(std::string("scenario: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::out_of_range& e) {
    throw UsageError(e.what());
  }
  for (const auto& r : result.records) std::cout << r << "\n";
  for (const auto& t : result.transcript) std::cout << t << "\n";
  std::cerr << "scenario: " << result.records.size() << " steps, " << result.rejections << " rejected rounds, expectations "
            << (result.all_expectations_met ? "met" : "NOT met") << "\n";
  return result.all_expectations_met && result.rejections == 0 ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ncaudit: private auditing for network-coded storage"};
  app.require_subcommand(1);

  SetupArgs setup;
  auto* s = app.add_subcommand("setup", "encode, tag and distribute a file");
  s->add_option("--file", setup.file, "input file")->required()->check(CLI::ExistingFile);
  s->add_option("--m", setup.m, "source blocks");
  s->add_option("--n", setup.n, "symbols per block");
  s->add_option("--nodes", setup.nodes, "storage nodes");
  s->add_option("--per-node", setup.per_node, "blocks per node");
  s->add_option("--helpers", setup.helpers, "repair helpers");
  s->add_option("--repair-per-helper", setup.q, "blocks sent per helper");
  s->add_option("--layout", setup.layout, "evenodd4 | random_functional")
      ->check(CLI::IsMember({"evenodd4", "random_functional"}));
  s->add_option("--ell", setup.ell, "tags per block");
  s->add_option("--lambda", setup.lambda, "key and nonce bits");
  s->add_option("--seed", setup.seed, "hex seed (default NCAUDIT_SEED or 1)");
  s->add_option("--out", setup.out, "state directory")->required();

  AuditArgs audit;
  auto* a = app.add_subcommand("audit", "challenge nodes and verify their proofs");
  a->add_option("--dir", audit.dir)->required()->check(CLI::ExistingDirectory);
  a->add_option("--node", audit.node, "1-based node, 0 for all");
  a->add_option("--count", audit.count, "blocks per challenge (default min(300, M))");
  a->add_option("--rounds", audit.rounds)->check(CLI::PositiveNumber);

  CorruptArgs corrupt;
  auto* c = app.add_subcommand("corrupt", "inject a fault at a node");
  c->add_option("--dir", corrupt.dir)->required()->check(CLI::ExistingDirectory);
  c->add_option("--node", corrupt.node);
  c->add_option("--kind", corrupt.kind, "symbol | delete | lie")->check(CLI::IsMember({"symbol", "delete", "lie"}));
  c->add_option("--block", corrupt.block, "1-based block at the node");
  c->add_option("--position", corrupt.position, "1-based symbol position");
  c->add_option("--delta", corrupt.delta, "value added to the symbol");
  c->add_option("--epsilon", corrupt.epsilon, "lie probability")->check(CLI::Range(0.0, 1.0));

  RepairArgs repair;
  auto* r = app.add_subcommand("repair", "rebuild a node from helpers");
  r->add_option("--dir", repair.dir)->required()->check(CLI::ExistingDirectory);
  r->add_option("--node", repair.node);
  r->add_option("--mode", repair.mode)->check(CLI::IsMember({"exact", "functional"}));

  ExtractArgs extract;
  auto* e = app.add_subcommand("extract", "recover a node's blocks from audit answers");
  e->add_option("--dir", extract.dir)->required()->check(CLI::ExistingDirectory);
  e->add_option("--node", extract.node);
  e->add_option("--repetitions", extract.repetitions)->check(CLI::PositiveNumber);
  e->add_option("--seed", extract.seed);

  BenchArgs bench_args;
  auto* b = app.add_subcommand("bench", "time proof generation and verification");
  b->add_option("--block-kb", bench_args.block_kb)->check(CLI::PositiveNumber);
  b->add_option("--m", bench_args.m)->check(CLI::PositiveNumber);
  b->add_option("--challenge", bench_args.challenge)->check(CLI::PositiveNumber);
  b->add_option("--ell", bench_args.ell)->check(CLI::PositiveNumber);
  b->add_option("--lambda", bench_args.lambda);
  b->add_option("--trials", bench_args.trials)->check(CLI::PositiveNumber);
  b->add_option("--seed", bench_args.seed);

  std::string scenario_path;
  auto* sc = app.add_subcommand("scenario", "run a scripted fault and audit schedule");
  sc->add_option("--file", scenario_path)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*s) return cmd_setup(setup);
    if (*a) return cmd_audit(audit);
    if (*c) return cmd_corrupt(corrupt);
    if (*r) return cmd_repair(repair);
    if (*e) return cmd_extract(extract);
    if (*b) return cmd_bench(bench_args);
    if (*sc) return cmd_scenario(scenario_path);
  } catch (const UsageError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kUsage;
  } catch (const std::exception& err) {
    std::cerr << "internal error: " << err.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
