#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace commcent {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Immutable undirected simple graph in CSR form.
///
/// Node ids are dense (0..n-1) and every neighbor list is sorted ascending.
/// Each node carries the label it had in the input file so results can be
/// reported against the original identifiers.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph over nodes [0, n). Self-loops and repeated edges are
  /// dropped. When `labels` is empty, node i is labelled by its decimal id.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t num_nodes() const noexcept { return labels_.size(); }
  std::size_t num_edges() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const noexcept {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const noexcept { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const noexcept;

  const std::string& label(NodeId u) const noexcept { return labels_[u]; }
  std::span<const std::string> labels() const noexcept { return labels_; }

  /// Calls f(u, v) once per edge with u < v.
  template <class F>
  void for_each_edge(F&& f) const {
    for (NodeId u = 0; u < num_nodes(); ++u)
      for (NodeId v : neighbors(u))
        if (u < v) f(u, v);
  }

  std::vector<Edge> edges() const;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::string> labels_;
};

// ---------------------------------------------------------------------------
// Edge-list ingestion

struct EdgeListOptions {
  // nullopt splits on any run of whitespace and/or commas.
  std::optional<char> delimiter;
  std::vector<std::string> comment_prefixes{"#", "%"};
};

struct IngestReport {
  std::size_t data_lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
};

struct IngestResult {
  Graph graph;
  IngestReport report;
};

/// Parses one edge per data line. Labels are remapped to dense ids in order
/// of first appearance; only the first two fields of a line are used.
/// Throws DataError on a malformed line (with its line number) or when the
/// input holds no edges.
IngestResult ingest_edge_list(std::istream& in, const EdgeListOptions& options = {});
IngestResult read_edge_list(const std::filesystem::path& path,
                            const EdgeListOptions& options = {});

/// Writes `original_label,dense_id` rows with a header line.
void write_label_map(std::ostream& out, const Graph& g);

/// Splits a data line into fields; shared by the edge-list and partition
/// readers. Returns an empty vector for blank and comment lines.
std::vector<std::string> split_fields(const std::string& line, const EdgeListOptions& options,
                                      std::size_t line_number);

// ---------------------------------------------------------------------------
// Connectivity

struct Components {
  std::vector<std::uint32_t> component;  // per node, numbered by smallest member id
  std::vector<std::size_t> sizes;
};

Components connected_components(const Graph& g);
bool is_connected(const Graph& g);

struct Subgraph {
  Graph graph;
  std::vector<NodeId> original_ids;  // new id -> id in the parent graph
};

/// Subgraph induced by `nodes`, renumbered in the given order. Labels carry over.
Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes);

/// Largest component; among equal sizes the one holding the smallest node id.
Subgraph largest_connected_component(const Graph& g);

// ---------------------------------------------------------------------------
// Topological profile

struct TopoStats {
  std::size_t n = 0;
  std::size_t m = 0;
  double avg_degree = 0.0;
  double avg_shortest_path = 0.0;
  double density = 0.0;
  double transitivity = 0.0;
  std::optional<double> assortativity;  // absent for zero degree variance
  std::uint32_t diameter = 0;
  // Set when avg_shortest_path and diameter come from sampled BFS sources.
  std::optional<std::size_t> sampled_sources;
};

struct TopoOptions {
  std::optional<std::size_t> sample_sources;
  std::uint64_t seed = 0;
};

/// Requires a connected graph with at least two nodes (DataError otherwise).
TopoStats topo_stats(const Graph& g, const TopoOptions& options = {});

std::uint64_t count_triangles(const Graph& g);

/// BFS hop distances from `source`; unreachable nodes get UINT32_MAX.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

}  // namespace commcent
