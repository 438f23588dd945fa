#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "commcent/graph.hpp"

namespace commcent {

using CommunityId = std::uint32_t;

/// Hard assignment of every node to one community.
///
/// Community ids are canonical: they are renumbered 0..k-1 in order of first
/// appearance along the node ids, so two partitions that group nodes the same
/// way compare equal regardless of the labels they were built from.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::span<const std::uint32_t> assignment);

  static Partition single(std::size_t n);
  static Partition singletons(std::size_t n);

  std::size_t num_nodes() const noexcept { return assignment_.size(); }
  std::size_t num_communities() const noexcept { return offsets_.size() - 1; }
  CommunityId community_of(NodeId u) const noexcept { return assignment_[u]; }
  std::span<const CommunityId> assignment() const noexcept { return assignment_; }

  std::span<const NodeId> members(CommunityId c) const noexcept {
    return {members_.data() + offsets_[c], members_.data() + offsets_[c + 1]};
  }
  std::size_t size(CommunityId c) const noexcept { return offsets_[c + 1] - offsets_[c]; }

  /// Hash of the canonical assignment, for tracing scores to a detection run.
  std::string fingerprint() const;

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.assignment_ == b.assignment_;
  }

 private:
  std::vector<CommunityId> assignment_;
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> members_;
};

struct CommunityLinks {
  CommunityId community;
  std::uint32_t links;
};

/// Per-node split of links into the intra-community graph G_l and the
/// inter-community graph G_g, plus the count of links into each community.
class LinkDecomposition {
 public:
  LinkDecomposition(const Graph& g, const Partition& p);

  std::uint32_t intra(NodeId u) const noexcept { return intra_[u]; }
  std::uint32_t inter(NodeId u) const noexcept { return total_[u] - intra_[u]; }
  std::uint32_t total(NodeId u) const noexcept { return total_[u]; }

  /// Non-zero k_{u,c} entries, sorted by community id.
  std::span<const CommunityLinks> by_community(NodeId u) const noexcept {
    return {entries_.data() + offsets_[u], entries_.data() + offsets_[u + 1]};
  }

 private:
  std::vector<std::uint32_t> intra_;
  std::vector<std::uint32_t> total_;
  std::vector<std::size_t> offsets_;
  std::vector<CommunityLinks> entries_;
};

inline LinkDecomposition link_decomposition(const Graph& g, const Partition& p) {
  return LinkDecomposition(g, p);
}

/// Newman-Girvan modularity. Requires at least one edge.
double modularity(const Graph& g, const Partition& p);

/// Fraction of edges whose endpoints lie in different communities.
double mixing_parameter(const Graph& g, const Partition& p);

/// Two-level map equation codelength in bits for the unrecorded random walk
/// (stationary flow degree/2m, no teleportation). Zero for an edgeless graph.
double map_equation(const Graph& g, const Partition& p);

// ---------------------------------------------------------------------------
// Partition files: "node_label community_label" per line.

struct PartitionReadOptions {
  EdgeListOptions format;
  // Lines naming nodes absent from the graph are skipped instead of rejected;
  // used when a full-graph partition is replayed on the LCC.
  bool ignore_unknown_nodes = false;
};

Partition load_partition(std::istream& in, const Graph& g, const PartitionReadOptions& options = {});
Partition read_partition(const std::filesystem::path& path, const Graph& g,
                         const PartitionReadOptions& options = {});
void save_partition(std::ostream& out, const Graph& g, const Partition& p);

}  // namespace commcent
