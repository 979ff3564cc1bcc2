#include "ncaudit/cluster.hpp"

#include <sodium.h>

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ncaudit/codec.hpp"

namespace ncaudit {

using json = nlohmann::ordered_json;

namespace {

std::string digest_hex(std::span<const std::uint8_t> bytes, std::size_t len = 8) {
  std::vector<std::uint8_t> out(len);
  crypto_generichash(out.data(), out.size(), bytes.data(), bytes.size(), nullptr, 0);
  return to_hex(out);
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text(const std::filesystem::path& path) {
  const auto b = read_bytes(path);
  return {b.begin(), b.end()};
}

Proof garbage_proof(const SystemParams& p, Rng& rng) {
  Proof proof;
  proof.ct.c_bar = rng.symbols(p.n - 2);
  proof.ct.nonce = rng.symbols(p.lambda_bits / 8);
  proof.ct.p = rng.symbols(p.ell);
  proof.pad = {rng.symbol(), rng.symbol()};
  proof.tag = TagVector(rng.symbols(p.ell));
  return proof;
}

void save_store(const std::filesystem::path& dir, const NodeStore& store) {
  std::filesystem::create_directories(dir);
  json meta = json::array();
  for (std::size_t k = 0; k < store.size(); ++k) {
    meta.push_back(store[k].has_value());
    if (!store[k]) continue;
    write_bytes(dir / ("block" + std::to_string(k + 1) + ".ncab"), wire::encode_block(store[k]->block));
    write_bytes(dir / ("tag" + std::to_string(k + 1) + ".bin"), wire::encode_tag(store[k]->tag));
  }
  std::ofstream(dir / "store.json") << meta.dump() << "\n";
}

NodeStore load_store(const std::filesystem::path& dir, std::size_t ell) {
  const json meta = json::parse(read_text(dir / "store.json"));
  NodeStore store;
  for (std::size_t k = 0; k < meta.size(); ++k) {
    const auto block_path = dir / ("block" + std::to_string(k + 1) + ".ncab");
    if (!meta[k].get<bool>() || !std::filesystem::exists(block_path)) {
      store.emplace_back(std::nullopt);
      continue;
    }
    store.emplace_back(StoredBlock{wire::decode_block(read_bytes(block_path)),
                                   wire::decode_tag(read_bytes(dir / ("tag" + std::to_string(k + 1) + ".bin")), ell)});
  }
  return store;
}

}  // namespace

std::string Party::name() const {
  switch (role) {
    case Role::user:
      return "user";
    case Role::tpa:
      return "tpa";
    case Role::node:
      return "node" + std::to_string(index + 1);
  }
  return "?";
}

const Prf& KeyVault::k_v(Role reader) const {
  if (reader == Role::node) throw KeyScopeError("storage nodes may not read k_v");
  return keys_.k_v;
}

const Prf& KeyVault::k_e(Role reader) const {
  if (reader == Role::tpa) throw KeyScopeError("the auditor may not read k_e");
  return keys_.k_e;
}

const char* category_name(ByteCategory c) noexcept {
  switch (c) {
    case ByteCategory::data_block:
      return "data_block";
    case ByteCategory::tag:
      return "tag";
    case ByteCategory::coefficient:
      return "coefficient";
    case ByteCategory::proof:
      return "proof";
    case ByteCategory::control:
      return "control";
  }
  return "?";
}

void ByteLedger::record(const Party& from, const Party& to, ByteCategory cat, std::uint64_t bytes) {
  const auto c = static_cast<std::size_t>(cat);
  sent_[from][c] += bytes;
  received_[to][c] += bytes;
  ++messages_;
}

std::uint64_t ByteLedger::sent(const Party& p, ByteCategory cat) const {
  const auto it = sent_.find(p);
  return it == sent_.end() ? 0 : it->second[static_cast<std::size_t>(cat)];
}

std::uint64_t ByteLedger::received(const Party& p, ByteCategory cat) const {
  const auto it = received_.find(p);
  return it == received_.end() ? 0 : it->second[static_cast<std::size_t>(cat)];
}

std::uint64_t ByteLedger::total_sent(ByteCategory cat) const {
  std::uint64_t t = 0;
  for (const auto& [p, c] : sent_) t += c[static_cast<std::size_t>(cat)];
  return t;
}

std::uint64_t ByteLedger::total_received(ByteCategory cat) const {
  std::uint64_t t = 0;
  for (const auto& [p, c] : received_) t += c[static_cast<std::size_t>(cat)];
  return t;
}

Cluster::Cluster(Cluster&&) noexcept = default;
Cluster& Cluster::operator=(Cluster&&) noexcept = default;
Cluster::~Cluster() = default;

wire::Bytes Cluster::send(const Party& from, const Party& to, ByteCategory cat, std::string_view kind,
                          wire::Bytes payload) {
  ledger_.record(from, to, cat, payload.size());
  json rec;
  rec["step"] = ++step_;
  rec["from"] = from.name();
  rec["to"] = to.name();
  rec["kind"] = kind;
  rec["category"] = category_name(cat);
  rec["bytes"] = payload.size();
  rec["digest"] = digest_hex(payload);
  transcript_.push_back(rec.dump());
  return payload;
}

void Cluster::note(std::string_view kind, const std::string& detail) {
  json rec;
  rec["step"] = ++step_;
  rec["event"] = kind;
  rec["detail"] = detail;
  transcript_.push_back(rec.dump());
}

constexpr int kMaxKeyDraws = 8;

Cluster Cluster::spawn(const ClusterConfig& config, std::span<const std::uint8_t> file) {
  config.params.validate();
  Cluster c;
  c.config_ = config;
  Rng master = Rng::seeded(config.seed);
  c.user_rng_ = master.fork();
  c.tpa_rng_ = master.fork();
  c.nodes_.resize(config.params.nodes);
  for (auto& node : c.nodes_) node.rng = master.fork();

  // Keys whose mask basis is degenerate are discarded and redrawn.
  std::optional<KeyMaterial> drawn;
  std::optional<SetupResult> result;
  for (int attempt = 0;; ++attempt) {
    drawn = keygen(config.params, c.user_rng_, config.prf_mode);
    const auto layout = make_layout(config.layout, config.params, c.user_rng_);
    try {
      result = setup_file(file, config.params, config.file_id, *drawn, layout, c.user_rng_);
      break;
    } catch (const NCryptSetupError&) {
      if (attempt + 1 == kMaxKeyDraws) throw;
    }
  }
  auto keys = std::move(*drawn);
  auto& setup = *result;
  c.vault_ = std::make_unique<KeyVault>(std::move(keys));
  c.user_mac_ = std::make_unique<SpaceMac>(c.vault_->k_v(Role::user), config.file_id, config.params.ell);
  c.user_manifest_ = setup.manifest;

  const auto aux_bytes = wire::encode_aux(setup.aux);
  const auto& ke = c.vault_->k_e(Role::user).key().bytes();
  for (std::uint32_t i = 0; i < c.nodes_.size(); ++i) {
    const Party to = Party::node(i);
    for (const auto& slot : setup.nodes[i]) {
      auto b = c.send(Party::user(), to, ByteCategory::data_block, "store_block", wire::encode_block(slot->block));
      auto t = c.send(Party::user(), to, ByteCategory::tag, "store_tag", wire::encode_tag(slot->tag));
      c.nodes_[i].store.emplace_back(StoredBlock{wire::decode_block(b), wire::decode_tag(t, config.params.ell)});
    }
    c.send(Party::user(), to, ByteCategory::control, "aux", aux_bytes);
    c.send(Party::user(), to, ByteCategory::control, "key_e", wire::Bytes(ke.begin(), ke.end()));
  }
  c.aux_ = wire::decode_aux(aux_bytes);

  const auto mf = c.send(Party::user(), Party::tpa(), ByteCategory::coefficient, "manifest",
                         [&] {
                           const auto s = setup.manifest.serialize();
                           return wire::Bytes(s.begin(), s.end());
                         }());
  c.tpa_manifest_ = FileManifest::parse(std::string(mf.begin(), mf.end()));
  const auto& kv = c.vault_->k_v(Role::user).key().bytes();
  c.send(Party::user(), Party::tpa(), ByteCategory::control, "key_v", wire::Bytes(kv.begin(), kv.end()));
  c.tpa_mac_ = std::make_unique<SpaceMac>(c.vault_->k_v(Role::tpa), config.file_id, config.params.ell);
  return c;
}

Proof Cluster::node_answer(std::uint32_t node, const Challenge& chal) {
  auto& st = nodes_.at(node);
  if (st.lie_probability > 0.0 && st.rng.unit() < st.lie_probability) return garbage_proof(params(), st.rng);
  GenProofOptions opt;
  opt.missing = MissingPolicy::substitute_random;
  opt.lambda_bits = params().lambda_bits;
  return gen_proof(st.served(), chal, vault_->k_e(Role::node), aux_, st.rng, opt);
}

Proof Cluster::challenge_node(const Party& requester, std::uint32_t node, const Challenge& chal) {
  if (node >= nodes_.size()) throw std::out_of_range("challenge_node: unknown node");
  const auto cb = send(requester, Party::node(node), ByteCategory::control, "challenge", wire::encode_challenge(chal));
  const auto proof = node_answer(node, wire::decode_challenge(cb, node));
  const auto pb = send(Party::node(node), requester, ByteCategory::proof, "proof", wire::encode_proof(proof));
  return wire::decode_proof(pb, params());
}

AuditOutcome Cluster::run_audit_round(std::uint32_t node, std::size_t count) {
  AuditOutcome out;
  out.challenge = gen_challenge(tpa_manifest_, node, count, tpa_rng_);
  out.proof = challenge_node(Party::tpa(), node, out.challenge);
  out.proof_bytes = wire::encode_proof(out.proof).size();
  out.accepted =
      detail::verify_proof_core(tpa_mac(), tpa_manifest_, &tpa_manifest_.deltas, out.challenge, out.proof, &out.verify);
  send(Party::tpa(), Party::user(), ByteCategory::control, "verdict", {static_cast<std::uint8_t>(out.accepted)});
  return out;
}

void Cluster::inject_fault(std::uint32_t node, const FaultDescriptor& fault) {
  auto& st = nodes_.at(node);
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, CorruptSymbol>) {
          if (f.delta == 0) throw InvalidFaultError("corrupt_symbol: delta must be nonzero");
          if (f.block >= st.store.size() || !st.store[f.block]) throw InvalidFaultError("corrupt_symbol: no such block");
          if (f.position >= params().n) throw InvalidFaultError("corrupt_symbol: position outside the data symbols");
          st.store[f.block]->block.symbols()[f.position] ^= f.delta;
          note("fault", "corrupt_symbol " + Party::node(node).name() + " block " + std::to_string(f.block + 1));
        } else if constexpr (std::is_same_v<F, DeleteBlockFault>) {
          if (f.block >= st.store.size() || !st.store[f.block]) throw InvalidFaultError("delete_block: no such block");
          st.store[f.block].reset();
          note("fault", "delete_block " + Party::node(node).name() + " block " + std::to_string(f.block + 1));
        } else if constexpr (std::is_same_v<F, ReplayOld>) {
          if (f.snapshot.node != node) throw InvalidFaultError("replay_old: snapshot of another node");
          if (f.snapshot.epoch >= st.epoch) throw InvalidFaultError("replay_old: snapshot must predate a functional repair");
          st.replay = f.snapshot.store;
          note("fault", "replay_old " + Party::node(node).name());
        } else {
          if (!(f.epsilon >= 0.0 && f.epsilon <= 1.0)) throw InvalidFaultError("lie_probability: epsilon outside [0, 1]");
          st.lie_probability = f.epsilon;
          note("fault", "lie_probability " + Party::node(node).name() + " " + std::to_string(f.epsilon));
        }
      },
      fault);
}

NodeSnapshot Cluster::snapshot(std::uint32_t node) const {
  const auto& st = nodes_.at(node);
  return {node, st.epoch, st.store};
}

RepairReport Cluster::fail_and_repair(std::uint32_t node, RepairMode mode) {
  if (node >= nodes_.size()) throw std::out_of_range("fail_and_repair: unknown node");
  RepairReport report;
  const auto user_before = ledger_.received(Party::user(), ByteCategory::data_block);

  auto& failed = nodes_[node];
  failed.store.clear();
  failed.replay.reset();
  failed.lie_probability = 0.0;
  note("node_failed", Party::node(node).name());

  report.plan = mode == RepairMode::exact ? plan_exact_repair(user_manifest_, node)
                                          : plan_functional_repair(user_manifest_, node, user_rng_);
  const auto& plan = report.plan;

  std::vector<wire::RepairMessage> received;
  for (std::size_t i = 0; i < plan.helpers.size(); ++i) {
    const auto h = plan.helpers[i];
    const auto gb = send(Party::user(), Party::node(h), ByteCategory::coefficient, "repair_gamma",
                         wire::encode_rows(plan.gamma[i]));
    const auto gamma = wire::decode_rows(gb);
    for (auto& msg : make_repair_blocks(h, nodes_[h].served(), gamma)) {
      auto mb = send(Party::node(h), Party::node(node), ByteCategory::data_block, "repair_block",
                     wire::encode_repair(msg));
      report.helper_bytes += mb.size();
      received.push_back(wire::decode_repair(mb, params().ell));
    }
  }
  const auto tb = send(Party::user(), Party::node(node), ByteCategory::coefficient, "repair_theta",
                       wire::encode_rows(plan.theta));
  failed.store = reconstruct_node(received, wire::decode_rows(tb));
  if (mode == RepairMode::functional) ++failed.epoch;

  const auto cb = send(Party::user(), Party::tpa(), ByteCategory::coefficient, "refresh_coeffs",
                       wire::encode_rows(plan.expected_new_coeffs));
  refresh_manifest(tpa_manifest_, plan, wire::decode_rows(cb));
  refresh_manifest(user_manifest_, plan, plan.expected_new_coeffs);
  note("node_repaired", Party::node(node).name() + (mode == RepairMode::exact ? " exact" : " functional"));

  report.user_data_block_bytes = ledger_.received(Party::user(), ByteCategory::data_block) - user_before;
  report.post_audit_accepted = run_audit_round(node, failed.store.size()).accepted;
  return report;
}

std::vector<CodedBlock> Cluster::harness_blocks(std::span<const std::uint32_t> nodes) const {
  std::vector<CodedBlock> out;
  for (auto i : nodes) {
    for (const auto& slot : nodes_.at(i).store) {
      if (slot) out.push_back(slot->block);
    }
  }
  return out;
}

void Cluster::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  json doc;
  doc["format"] = 1;
  doc["layout"] = config_.layout;
  doc["seed"] = config_.seed;
  doc["prf_mode"] = config_.prf_mode == PrfMode::test ? "test" : "production";
  doc["file_id"] = config_.file_id;
  doc["step"] = step_;
  doc["user_rng"] = user_rng_.save_state();
  doc["tpa_rng"] = tpa_rng_.save_state();
  json nodes = json::array();
  for (const auto& st : nodes_) {
    nodes.push_back(json{{"epoch", st.epoch},
                         {"lie_probability", st.lie_probability},
                         {"replaying", st.replay.has_value()},
                         {"rng", st.rng.save_state()}});
  }
  doc["nodes"] = std::move(nodes);
  std::ofstream(dir / "cluster.json") << doc.dump(2) << "\n";

  json keys;
  keys["k_v"] = to_hex(vault_->k_v(Role::user).key().bytes());
  keys["k_e"] = to_hex(vault_->k_e(Role::user).key().bytes());
  std::ofstream(dir / "keys.json") << keys.dump(2) << "\n";

  user_manifest_.save(dir / "manifest.json");
  tpa_manifest_.save(dir / "tpa_manifest.json");
  write_bytes(dir / "aux.bin", wire::encode_aux(aux_));
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto nd = dir / ("node" + std::to_string(i + 1));
    std::filesystem::remove_all(nd);
    save_store(nd, nodes_[i].store);
    if (nodes_[i].replay) save_store(nd / "replay", *nodes_[i].replay);
  }
  std::ofstream log(dir / "transcript.jsonl", std::ios::trunc);
  for (const auto& line : transcript_) log << line << "\n";
}

Cluster Cluster::load(const std::filesystem::path& dir) {
  const json doc = json::parse(read_text(dir / "cluster.json"));
  if (doc.at("format").get<int>() != 1) throw std::runtime_error("cluster state: unsupported format");
  Cluster c;
  c.config_.layout = doc.at("layout").get<std::string>();
  c.config_.seed = doc.at("seed").get<std::uint64_t>();
  c.config_.prf_mode = doc.at("prf_mode").get<std::string>() == "test" ? PrfMode::test : PrfMode::production;
  c.config_.file_id = doc.at("file_id").get<std::string>();
  c.step_ = doc.at("step").get<std::uint64_t>();
  c.user_rng_ = Rng::restore(doc.at("user_rng").get<std::string>());
  c.tpa_rng_ = Rng::restore(doc.at("tpa_rng").get<std::string>());

  c.user_manifest_ = FileManifest::load(dir / "manifest.json");
  c.tpa_manifest_ = FileManifest::load(dir / "tpa_manifest.json");
  c.config_.params = c.user_manifest_.params;
  const std::size_t ell = c.user_manifest_.params.ell;

  const json keys = json::parse(read_text(dir / "keys.json"));
  c.vault_ = std::make_unique<KeyVault>(KeyMaterial{Prf(PrfKey(from_hex(keys.at("k_v").get<std::string>())), c.config_.prf_mode),
                                                    Prf(PrfKey(from_hex(keys.at("k_e").get<std::string>())), c.config_.prf_mode)});
  c.user_mac_ = std::make_unique<SpaceMac>(c.vault_->k_v(Role::user), c.config_.file_id, ell);
  c.tpa_mac_ = std::make_unique<SpaceMac>(c.vault_->k_v(Role::tpa), c.config_.file_id, ell);
  c.aux_ = wire::decode_aux(read_bytes(dir / "aux.bin"));

  const auto& nodes = doc.at("nodes");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NodeState st;
    st.epoch = nodes[i].at("epoch").get<std::uint64_t>();
    st.lie_probability = nodes[i].at("lie_probability").get<double>();
    st.rng = Rng::restore(nodes[i].at("rng").get<std::string>());
    const auto nd = dir / ("node" + std::to_string(i + 1));
    st.store = load_store(nd, ell);
    if (nodes[i].at("replaying").get<bool>()) st.replay = load_store(nd / "replay", ell);
    c.nodes_.push_back(std::move(st));
  }
  if (std::filesystem::exists(dir / "transcript.jsonl")) {
    std::istringstream log(read_text(dir / "transcript.jsonl"));
    for (std::string line; std::getline(log, line);) {
      if (!line.empty()) c.transcript_.push_back(line);
    }
  }
  return c;
}

std::string Cluster::state_digest() const {
  std::vector<std::uint8_t> buf;
  auto put = [&](std::span<const std::uint8_t> b) { buf.insert(buf.end(), b.begin(), b.end()); };
  auto put_str = [&](const std::string& s) { buf.insert(buf.end(), s.begin(), s.end()); };
  put_str(user_manifest_.serialize());
  put_str(tpa_manifest_.serialize());
  put_str(user_rng_.save_state());
  put_str(tpa_rng_.save_state());
  for (const auto& st : nodes_) {
    for (const auto& slot : st.store) {
      if (!slot) continue;
      put(slot->block.symbols());
      put(slot->tag.values);
    }
    put_str(st.rng.save_state());
  }
  return digest_hex(buf, 32);
}

ScenarioResult run_scenario(const std::string& document) {
  ScenarioResult result;
  const json doc = json::parse(document);
  ClusterConfig cfg;
  if (doc.contains("params")) {
    const auto& p = doc["params"];
    cfg.params.n = p.value("n", cfg.params.n);
    cfg.params.m = p.value("m", cfg.params.m);
    cfg.params.nodes = p.value("nodes", cfg.params.nodes);
    cfg.params.per_node = p.value("per_node", cfg.params.per_node);
    cfg.params.helpers = p.value("helpers", cfg.params.helpers);
    cfg.params.repair_per_helper = p.value("repair_per_helper", cfg.params.repair_per_helper);
    cfg.params.ell = p.value("ell", cfg.params.ell);
    cfg.params.lambda_bits = p.value("lambda_bits", cfg.params.lambda_bits);
  }
  cfg.layout = doc.value("layout", cfg.layout);
  cfg.seed = doc.value("seed", cfg.seed);
  cfg.prf_mode = doc.value("prf", std::string("production")) == "test" ? PrfMode::test : PrfMode::production;
  cfg.file_id = doc.value("file_id", cfg.file_id);

  std::vector<std::uint8_t> file;
  if (doc.contains("file_hex")) {
    file = from_hex(doc["file_hex"].get<std::string>());
  } else {
    Rng frng = Rng::seeded(cfg.seed ^ 0xF11Eull);
    file = frng.symbols(doc.value("file_size", cfg.params.capacity()));
  }
  Cluster cluster = Cluster::spawn(cfg, file);
  std::map<std::string, NodeSnapshot> snapshots;

  auto node_of = [&](const json& step) {
    const auto n = step.at("node").get<std::uint32_t>();
    if (n < 1 || n > cluster.node_count()) throw std::out_of_range("scenario: node out of range");
    return n - 1;
  };
  auto record = [&](json rec) { result.records.push_back(rec.dump()); };

  for (const auto& step : doc.value("steps", json::array())) {
    const auto op = step.at("op").get<std::string>();
    if (op == "audit") {
      const auto node = node_of(step);
      const auto count = step.value("count", std::size_t{1});
      const auto rounds = step.value("rounds", std::size_t{1});
      std::size_t accepted = 0;
      for (std::size_t r = 0; r < rounds; ++r) accepted += cluster.run_audit_round(node, count).accepted;
      result.rejections += rounds - accepted;
      json rec{{"op", "audit"}, {"node", node + 1}, {"rounds", rounds}, {"accepted", accepted}};
      if (step.contains("expect")) {
        const bool want_all = step["expect"].get<std::string>() == "accept";
        const bool met = want_all ? accepted == rounds : accepted < rounds;
        rec["expectation_met"] = met;
        result.all_expectations_met &= met;
      }
      record(rec);
    } else if (op == "snapshot") {
      snapshots[step.at("name").get<std::string>()] = cluster.snapshot(node_of(step));
      record({{"op", "snapshot"}, {"node", step.at("node")}});
    } else if (op == "fault") {
      const auto node = node_of(step);
      const auto kind = step.at("kind").get<std::string>();
      if (kind == "corrupt_symbol") {
        cluster.inject_fault(node, CorruptSymbol{step.at("block").get<std::uint32_t>() - 1,
                                                 step.at("position").get<std::uint32_t>() - 1,
                                                 step.value("delta", Symbol{1})});
      } else if (kind == "delete_block") {
        cluster.inject_fault(node, DeleteBlockFault{step.at("block").get<std::uint32_t>() - 1});
      } else if (kind == "replay_old") {
        cluster.inject_fault(node, ReplayOld{snapshots.at(step.at("snapshot").get<std::string>())});
      } else if (kind == "lie_probability") {
        cluster.inject_fault(node, LieProbability{step.at("epsilon").get<double>()});
      } else {
        throw std::invalid_argument("scenario: unknown fault kind " + kind);
      }
      record({{"op", "fault"}, {"node", node + 1}, {"kind", kind}});
    } else if (op == "repair") {
      const auto node = node_of(step);
      const auto mode = step.value("mode", std::string("exact")) == "functional" ? RepairMode::functional
                                                                                : RepairMode::exact;
      const auto rep = cluster.fail_and_repair(node, mode);
      json helpers = json::array();
      for (auto h : rep.plan.helpers) helpers.push_back(h + 1);
      record({{"op", "repair"},
              {"node", node + 1},
              {"helpers", helpers},
              {"user_data_block_bytes", rep.user_data_block_bytes},
              {"post_audit_accepted", rep.post_audit_accepted}});
      result.all_expectations_met &= rep.post_audit_accepted;
    } else {
      throw std::invalid_argument("scenario: unknown op " + op);
    }
  }
  result.transcript = cluster.transcript();
  return result;
}

}  // namespace ncaudit
