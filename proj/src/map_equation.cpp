#include <cmath>
#include <vector>

#include "commcent/partition.hpp"

namespace commcent {

namespace {

double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

}  // namespace

double map_equation(const Graph& g, const Partition& p) {
  const std::size_t m = g.num_edges();
  if (m == 0) return 0.0;
  const double unit = 1.0 / (2.0 * static_cast<double>(m));

  std::vector<std::uint64_t> cut(p.num_communities(), 0);
  std::vector<std::uint64_t> volume(p.num_communities(), 0);
  double node_entropy = 0.0;
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    volume[p.community_of(u)] += g.degree(u);
    node_entropy += plogp(static_cast<double>(g.degree(u)) * unit);
  }
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (p.community_of(u) != p.community_of(v)) {
      ++cut[p.community_of(u)];
      ++cut[p.community_of(v)];
    }
  });

  // Expanded form: plogp(q) - 2 sum plogp(q_c) - sum plogp(p_a) + sum plogp(q_c + p_c).
  std::uint64_t total_cut = 0;
  double exit_terms = 0.0;
  double module_terms = 0.0;
  for (std::size_t c = 0; c < cut.size(); ++c) {
    total_cut += cut[c];
    exit_terms += plogp(static_cast<double>(cut[c]) * unit);
    module_terms += plogp(static_cast<double>(cut[c] + volume[c]) * unit);
  }
  const double codelength = plogp(static_cast<double>(total_cut) * unit) - 2.0 * exit_terms -
                            node_entropy + module_terms;
  return codelength < 0.0 ? 0.0 : codelength;
}

}  // namespace commcent
