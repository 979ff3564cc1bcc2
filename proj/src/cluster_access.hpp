#pragma once

// Internal access to cluster state for the dynamics and extractor modules.

#include "ncaudit/cluster.hpp"

namespace ncaudit {

struct ClusterAccess {
  static FileManifest& user_manifest(Cluster& c) { return c.user_manifest_; }
  static FileManifest& tpa_manifest(Cluster& c) { return c.tpa_manifest_; }
  static std::vector<NodeState>& nodes(Cluster& c) { return c.nodes_; }
  static Rng& user_rng(Cluster& c) { return c.user_rng_; }
  static const SpaceMac& user_mac(const Cluster& c) { return c.user_mac(); }
  static const SpaceMac& tpa_mac(const Cluster& c) { return c.tpa_mac(); }
  static wire::Bytes send(Cluster& c, const Party& from, const Party& to, ByteCategory cat, std::string_view kind,
                          wire::Bytes payload) {
    return c.send(from, to, cat, kind, std::move(payload));
  }
  static void note(Cluster& c, std::string_view kind, const std::string& detail) { c.note(kind, detail); }
};

}  // namespace ncaudit
