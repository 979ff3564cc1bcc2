#include "ncaudit/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ncaudit/codec.hpp"

namespace ncaudit {

using json = nlohmann::ordered_json;

IndexMapping IndexMapping::identity(std::size_t m) {
  IndexMapping map;
  for (std::size_t i = 0; i < m; ++i) map.entries.emplace_back(static_cast<std::uint32_t>(i));
  return map;
}

std::size_t IndexMapping::live_count() const noexcept {
  std::size_t n = 0;
  for (const auto& e : entries) n += e.has_value();
  return n;
}

std::optional<std::size_t> IndexMapping::slot_of(std::size_t logical) const noexcept {
  std::size_t live = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i]) continue;
    if (live == logical) return i;
    ++live;
  }
  return std::nullopt;
}

void IndexMapping::validate(std::size_t m) const {
  std::set<std::uint32_t> seen;
  for (const auto& e : entries) {
    if (!e) continue;
    if (*e >= m || !seen.insert(*e).second) throw std::logic_error("IndexMapping: not a bijection");
  }
}

std::size_t FileManifest::coefficient_symbols() const noexcept {
  std::size_t total = 0;
  for (const auto& node : node_coeffs) {
    for (const auto& row : node) total += row.size();
  }
  return total;
}

std::vector<SymbolVector> FileManifest::all_rows() const {
  std::vector<SymbolVector> out;
  for (const auto& node : node_coeffs) out.insert(out.end(), node.begin(), node.end());
  return out;
}

std::string FileManifest::serialize() const {
  json doc;
  doc["file_id"] = file_id;
  doc["params"] = json{{"q", 256},
                       {"n", params.n},
                       {"m", params.m},
                       {"nodes", params.nodes},
                       {"per_node", params.per_node},
                       {"helpers", params.helpers},
                       {"repair_per_helper", params.repair_per_helper},
                       {"ell", params.ell},
                       {"lambda_bits", params.lambda_bits}};
  doc["source_lengths"] = source_lengths;
  json nodes = json::array();
  for (const auto& node : node_coeffs) {
    json rows = json::array();
    for (const auto& row : node) rows.push_back(to_hex(row));
    nodes.push_back(std::move(rows));
  }
  doc["node_coeffs"] = std::move(nodes);
  json map_doc = json::array();
  for (const auto& e : this->mapping.entries) map_doc.push_back(e ? json(*e) : json(nullptr));
  doc["mapping"] = std::move(map_doc);
  json deltas = json::array();
  for (const auto& [j, d] : this->deltas) deltas.push_back(json{{"source", j}, {"delta", to_hex(d.values)}});
  doc["deltas"] = std::move(deltas);
  return doc.dump(2) + "\n";
}

FileManifest FileManifest::parse(const std::string& text) {
  FileManifest mf;
  try {
    const json doc = json::parse(text);
    mf.file_id = doc.at("file_id").get<std::string>();
    const auto& p = doc.at("params");
    if (p.at("q").get<int>() != 256) throw std::invalid_argument("manifest: only q = 256 is supported");
    mf.params.n = p.at("n").get<std::uint32_t>();
    mf.params.m = p.at("m").get<std::uint32_t>();
    mf.params.nodes = p.at("nodes").get<std::uint32_t>();
    mf.params.per_node = p.at("per_node").get<std::uint32_t>();
    mf.params.helpers = p.at("helpers").get<std::uint32_t>();
    mf.params.repair_per_helper = p.at("repair_per_helper").get<std::uint32_t>();
    mf.params.ell = p.at("ell").get<std::uint32_t>();
    mf.params.lambda_bits = p.at("lambda_bits").get<std::uint32_t>();
    mf.source_lengths = doc.at("source_lengths").get<std::vector<std::uint32_t>>();
    for (const auto& node : doc.at("node_coeffs")) {
      std::vector<SymbolVector> rows;
      for (const auto& row : node) rows.push_back(from_hex(row.get<std::string>()));
      mf.node_coeffs.push_back(std::move(rows));
    }
    for (const auto& e : doc.at("mapping")) {
      mf.mapping.entries.push_back(e.is_null() ? std::nullopt
                                               : std::optional<std::uint32_t>(e.get<std::uint32_t>()));
    }
    for (const auto& d : doc.at("deltas")) {
      mf.deltas[d.at("source").get<std::uint32_t>()] = TagVector(from_hex(d.at("delta").get<std::string>()));
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("manifest: ") + e.what());
  }
  for (const auto& node : mf.node_coeffs) {
    for (const auto& row : node) {
      if (row.size() != mf.params.m) throw std::invalid_argument("manifest: coefficient row length != m");
    }
  }
  if (mf.source_lengths.size() != mf.params.m) throw std::invalid_argument("manifest: source_lengths size != m");
  mf.mapping.validate(mf.params.m);
  return mf;
}

void FileManifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << serialize();
}

FileManifest FileManifest::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace ncaudit
