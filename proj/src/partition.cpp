#include "commcent/partition.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_map>

#include <fmt/format.h>

#include "commcent/error.hpp"
#include "commcent/format.hpp"

namespace commcent {

Partition::Partition(std::span<const std::uint32_t> assignment) {
  std::unordered_map<std::uint32_t, CommunityId> canonical;
  assignment_.reserve(assignment.size());
  for (auto raw : assignment) {
    auto [it, inserted] = canonical.try_emplace(raw, static_cast<CommunityId>(canonical.size()));
    assignment_.push_back(it->second);
  }
  const std::size_t k = canonical.size();
  offsets_.assign(k + 1, 0);
  for (auto c : assignment_) ++offsets_[c + 1];
  for (std::size_t c = 0; c < k; ++c) offsets_[c + 1] += offsets_[c];
  members_.resize(assignment_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (NodeId u = 0; u < assignment_.size(); ++u) members_[cursor[assignment_[u]]++] = u;
}

Partition Partition::single(std::size_t n) {
  const std::vector<std::uint32_t> a(n, 0);
  return Partition(a);
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::uint32_t> a(n);
  for (std::uint32_t i = 0; i < n; ++i) a[i] = i;
  return Partition(a);
}

std::string Partition::fingerprint() const {
  std::uint64_t h = fnv1a("partition");
  for (auto c : assignment_) {
    const auto s = std::to_string(c);
    h = fnv1a(s, h);
    h = fnv1a(",", h);
  }
  return hex64(h);
}

LinkDecomposition::LinkDecomposition(const Graph& g, const Partition& p) {
  if (g.num_nodes() != p.num_nodes())
    throw InvalidArgument(fmt::format("partition covers {} nodes but graph has {}",
                                      p.num_nodes(), g.num_nodes()));
  const std::size_t n = g.num_nodes();
  intra_.assign(n, 0);
  total_.assign(n, 0);
  offsets_.assign(n + 1, 0);
  std::vector<CommunityId> scratch;
  for (NodeId u = 0; u < n; ++u) {
    const auto own = p.community_of(u);
    scratch.clear();
    for (NodeId v : g.neighbors(u)) {
      scratch.push_back(p.community_of(v));
      if (p.community_of(v) == own) ++intra_[u];
    }
    total_[u] = static_cast<std::uint32_t>(scratch.size());
    std::sort(scratch.begin(), scratch.end());
    for (std::size_t i = 0; i < scratch.size();) {
      std::size_t j = i;
      while (j < scratch.size() && scratch[j] == scratch[i]) ++j;
      entries_.push_back({scratch[i], static_cast<std::uint32_t>(j - i)});
      i = j;
    }
    offsets_[u + 1] = entries_.size();
  }
}

double modularity(const Graph& g, const Partition& p) {
  const std::size_t m = g.num_edges();
  if (m == 0) throw InvalidArgument("modularity is undefined for a graph without edges");
  std::vector<std::uint64_t> intra(p.num_communities(), 0);
  std::vector<std::uint64_t> degree(p.num_communities(), 0);
  for (NodeId u = 0; u < g.num_nodes(); ++u) degree[p.community_of(u)] += g.degree(u);
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (p.community_of(u) == p.community_of(v)) ++intra[p.community_of(u)];
  });
  const double md = static_cast<double>(m);
  double q = 0.0;
  for (std::size_t c = 0; c < intra.size(); ++c) {
    const double share = static_cast<double>(degree[c]) / (2.0 * md);
    q += static_cast<double>(intra[c]) / md - share * share;
  }
  return q;
}

double mixing_parameter(const Graph& g, const Partition& p) {
  const std::size_t m = g.num_edges();
  if (m == 0) throw InvalidArgument("mixing parameter is undefined for a graph without edges");
  std::size_t inter = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (p.community_of(u) != p.community_of(v)) ++inter;
  });
  return static_cast<double>(inter) / static_cast<double>(m);
}

Partition load_partition(std::istream& in, const Graph& g, const PartitionReadOptions& options) {
  std::unordered_map<std::string_view, NodeId> node_of;
  node_of.reserve(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) node_of.emplace(g.label(u), u);

  std::unordered_map<std::string, std::uint32_t> community_of;
  std::vector<std::optional<std::uint32_t>> assigned(g.num_nodes());
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = split_fields(line, options.format, line_number);
    if (fields.empty()) continue;
    if (fields.size() < 2)
      throw DataError(fmt::format("line {}: expected node label and community id", line_number));
    auto node = node_of.find(fields[0]);
    if (node == node_of.end()) {
      if (options.ignore_unknown_nodes) continue;
      throw DataError(fmt::format("line {}: unknown node '{}'", line_number, fields[0]));
    }
    if (assigned[node->second])
      throw DataError(fmt::format("line {}: node '{}' assigned twice", line_number, fields[0]));
    auto [it, inserted] =
        community_of.try_emplace(fields[1], static_cast<std::uint32_t>(community_of.size()));
    assigned[node->second] = it->second;
  }
  std::vector<std::uint32_t> assignment(g.num_nodes());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (!assigned[u])
      throw DataError(fmt::format("partition has no community for node '{}'", g.label(u)));
    assignment[u] = *assigned[u];
  }
  return Partition(assignment);
}

Partition read_partition(const std::filesystem::path& path, const Graph& g,
                         const PartitionReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open partition file '{}'", path.string()));
  try {
    return load_partition(in, g, options);
  } catch (const DataError& e) {
    throw DataError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

void save_partition(std::ostream& out, const Graph& g, const Partition& p) {
  out << "# node_label community_id\n";
  for (NodeId u = 0; u < g.num_nodes(); ++u) out << g.label(u) << ' ' << p.community_of(u) << '\n';
}

}  // namespace commcent
