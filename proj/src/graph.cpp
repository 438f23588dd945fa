#include "commcent/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "commcent/error.hpp"

namespace commcent {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (!labels.empty() && labels.size() != n)
    throw InvalidArgument(fmt::format("label count {} does not match node count {}",
                                      labels.size(), n));
  Graph g;
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  g.labels_ = std::move(labels);

  std::vector<std::size_t> counts(n + 1, 0);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw InvalidArgument(fmt::format("edge ({}, {}) out of range for {} nodes", u, v, n));
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];
  std::vector<NodeId> adjacency(counts[n]);
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (auto [u, v] : edges) {
    if (u == v) continue;
    adjacency[cursor[u]++] = v;
    adjacency[cursor[v]++] = u;
  }

  // Sort and deduplicate each row, compacting in place.
  g.offsets_.assign(n + 1, 0);
  std::size_t write = 0;
  for (std::size_t u = 0; u < n; ++u) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(counts[u]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(counts[u + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    for (auto it = first; it != last; ++it) adjacency[write++] = *it;
    g.offsets_[u + 1] = write;
  }
  adjacency.resize(write);
  adjacency.shrink_to_fit();
  g.adjacency_ = std::move(adjacency);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for_each_edge([&](NodeId u, NodeId v) { out.emplace_back(u, v); });
  return out;
}

std::vector<std::string> split_fields(const std::string& line, const EdgeListOptions& options,
                                      std::size_t line_number) {
  std::string_view view = line;
  while (!view.empty() && (view.back() == '\r' || view.back() == '\n')) view.remove_suffix(1);
  const auto content_start = view.find_first_not_of(" \t");
  if (content_start == std::string_view::npos) return {};
  const auto content = view.substr(content_start);
  for (const auto& prefix : options.comment_prefixes)
    if (!prefix.empty() && content.starts_with(prefix)) return {};

  std::vector<std::string> fields;
  if (options.delimiter) {
    const char d = *options.delimiter;
    std::size_t start = 0;
    while (true) {
      const auto pos = content.find(d, start);
      auto field = content.substr(start, pos == std::string_view::npos ? pos : pos - start);
      const auto b = field.find_first_not_of(" \t");
      const auto e = field.find_last_not_of(" \t");
      if (b == std::string_view::npos)
        throw DataError(fmt::format("line {}: empty field", line_number));
      fields.emplace_back(field.substr(b, e - b + 1));
      if (pos == std::string_view::npos) break;
      start = pos + 1;
    }
    return fields;
  }

  // Any run of whitespace separates fields; a comma separates exactly one pair
  // of fields, so ",," or a leading comma is an empty field.
  std::size_t i = 0;
  const auto is_space = [](char c) { return c == ' ' || c == '\t'; };
  while (i < content.size()) {
    while (i < content.size() && is_space(content[i])) ++i;
    if (i == content.size()) break;
    if (content[i] == ',') throw DataError(fmt::format("line {}: empty field", line_number));
    std::size_t j = i;
    while (j < content.size() && !is_space(content[j]) && content[j] != ',') ++j;
    fields.emplace_back(content.substr(i, j - i));
    i = j;
    while (i < content.size() && is_space(content[i])) ++i;
    if (i < content.size() && content[i] == ',') {
      ++i;
      while (i < content.size() && is_space(content[i])) ++i;
      if (i == content.size() || content[i] == ',')
        throw DataError(fmt::format("line {}: empty field", line_number));
    }
  }
  return fields;
}

IngestResult ingest_edge_list(std::istream& in, const EdgeListOptions& options) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  IngestReport report;

  const auto intern = [&](std::string&& label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(std::move(label));
    return it->second;
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = split_fields(line, options, line_number);
    if (fields.empty()) continue;
    if (fields.size() < 2)
      throw DataError(fmt::format("line {}: expected two node labels, found one", line_number));
    ++report.data_lines;
    const NodeId u = intern(std::move(fields[0]));
    const NodeId v = intern(std::move(fields[1]));
    if (u == v) {
      ++report.self_loops_dropped;
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (report.data_lines == 0) throw DataError("edge list is empty");

  const std::size_t n = labels.size();
  IngestResult result{Graph::from_edges(n, edges, std::move(labels)), report};
  result.report.duplicates_dropped = edges.size() - result.graph.num_edges();
  return result;
}

IngestResult read_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open edge list '{}'", path.string()));
  try {
    return ingest_edge_list(in, options);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void write_label_map(std::ostream& out, const Graph& g) {
  out << "original_label,dense_id\n";
  for (NodeId u = 0; u < g.num_nodes(); ++u) out << g.label(u) << ',' << u << '\n';
}

Components connected_components(const Graph& g) {
  constexpr auto kUnset = static_cast<std::uint32_t>(-1);
  Components c;
  c.component.assign(g.num_nodes(), kUnset);
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    if (c.component[s] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(c.sizes.size());
    queue.assign(1, s);
    c.component[s] = id;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (NodeId v : g.neighbors(queue[head]))
        if (c.component[v] == kUnset) {
          c.component[v] = id;
          queue.push_back(v);
        }
    c.sizes.push_back(queue.size());
  }
  return c;
}

bool is_connected(const Graph& g) {
  return g.num_nodes() > 0 && connected_components(g).sizes.size() == 1;
}

Subgraph induced_subgraph(const Graph& g, std::span<const NodeId> nodes) {
  constexpr auto kAbsent = static_cast<NodeId>(-1);
  std::vector<NodeId> remap(g.num_nodes(), kAbsent);
  std::vector<std::string> labels;
  labels.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    remap[nodes[i]] = static_cast<NodeId>(i);
    labels.push_back(g.label(nodes[i]));
  }
  std::vector<Edge> edges;
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (remap[u] != kAbsent && remap[v] != kAbsent) edges.emplace_back(remap[u], remap[v]);
  });
  return {Graph::from_edges(nodes.size(), edges, std::move(labels)),
          std::vector<NodeId>(nodes.begin(), nodes.end())};
}

Subgraph largest_connected_component(const Graph& g) {
  const auto comps = connected_components(g);
  if (comps.sizes.size() <= 1) {
    std::vector<NodeId> identity(g.num_nodes());
    for (NodeId i = 0; i < identity.size(); ++i) identity[i] = i;
    return {g, std::move(identity)};
  }
  // Components are numbered by their smallest member, so the first maximum wins ties.
  const auto best = static_cast<std::uint32_t>(
      std::max_element(comps.sizes.begin(), comps.sizes.end()) - comps.sizes.begin());
  std::vector<NodeId> members;
  members.reserve(comps.sizes[best]);
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    if (comps.component[u] == best) members.push_back(u);
  return induced_subgraph(g, members);
}

}  // namespace commcent
