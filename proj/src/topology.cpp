#include <algorithm>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "commcent/error.hpp"
#include "commcent/graph.hpp"
#include "commcent/parallel.hpp"

namespace commcent {

namespace {

constexpr auto kUnreached = std::numeric_limits<std::uint32_t>::max();

struct PathTotals {
  std::uint64_t distance_sum = 0;
  std::uint64_t pairs = 0;
  std::uint32_t eccentricity_max = 0;
};

// BFS that reuses caller-owned buffers; returns totals over reached nodes.
PathTotals bfs_totals(const Graph& g, NodeId source, std::vector<std::uint32_t>& dist,
                      std::vector<NodeId>& queue) {
  PathTotals t;
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] != kUnreached) continue;
      dist[v] = dist[u] + 1;
      t.distance_sum += dist[v];
      ++t.pairs;
      t.eccentricity_max = std::max(t.eccentricity_max, dist[v]);
      queue.push_back(v);
    }
  }
  for (NodeId u : queue) dist[u] = kUnreached;
  return t;
}

}  // namespace

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::uint32_t> dist(g.num_nodes(), kUnreached);
  std::vector<NodeId> queue{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (NodeId v : g.neighbors(queue[head]))
      if (dist[v] == kUnreached) {
        dist[v] = dist[queue[head]] + 1;
        queue.push_back(v);
      }
  return dist;
}

std::uint64_t count_triangles(const Graph& g) {
  // Each triangle u < v < w is counted once, at its lowest edge (u, v).
  std::uint64_t triangles = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    auto a = g.neighbors(u);
    auto b = g.neighbors(v);
    auto ia = std::upper_bound(a.begin(), a.end(), v);
    auto ib = std::upper_bound(b.begin(), b.end(), v);
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++triangles;
        ++ia;
        ++ib;
      }
    }
  });
  return triangles;
}

TopoStats topo_stats(const Graph& g, const TopoOptions& options) {
  const std::size_t n = g.num_nodes();
  if (n < 2) throw DataError("topological statistics need at least two nodes");
  if (!is_connected(g))
    throw DataError("topological statistics need a connected graph; extract the LCC first");

  TopoStats s;
  s.n = n;
  s.m = g.num_edges();
  const auto nd = static_cast<double>(n);
  const auto md = static_cast<double>(s.m);
  s.avg_degree = 2.0 * md / nd;
  s.density = 2.0 * md / (nd * (nd - 1.0));

  std::uint64_t triples = 0;
  for (NodeId u = 0; u < n; ++u) {
    const std::uint64_t k = g.degree(u);
    triples += k * (k - 1) / 2;
  }
  s.transitivity =
      triples == 0 ? 0.0
                   : 3.0 * static_cast<double>(count_triangles(g)) / static_cast<double>(triples);

  // Degree assortativity: Pearson correlation of endpoint degrees, both
  // orientations of every edge. Integer moments keep the zero-variance test exact.
  __int128 s1 = 0, s2 = 0, s3 = 0;
  g.for_each_edge([&](NodeId u, NodeId v) {
    const __int128 ku = static_cast<__int128>(g.degree(u));
    const __int128 kv = static_cast<__int128>(g.degree(v));
    s1 += ku + kv;
    s2 += ku * ku + kv * kv;
    s3 += ku * kv;
  });
  const __int128 samples = 2 * static_cast<__int128>(s.m);
  const __int128 var_num = samples * s2 - s1 * s1;
  if (var_num != 0) {
    const __int128 cov_num = 2 * samples * s3 - s1 * s1;
    s.assortativity = static_cast<double>(static_cast<long double>(cov_num) /
                                          static_cast<long double>(var_num));
  }

  // All-pairs (or sampled) BFS for <d> and the diameter.
  std::vector<NodeId> sources(n);
  std::iota(sources.begin(), sources.end(), NodeId{0});
  if (options.sample_sources && *options.sample_sources < n) {
    std::mt19937_64 rng(options.seed);
    std::shuffle(sources.begin(), sources.end(), rng);
    sources.resize(std::max<std::size_t>(1, *options.sample_sources));
    std::sort(sources.begin(), sources.end());
    s.sampled_sources = sources.size();
  }
  const std::size_t blocks = detail::block_count(sources.size());
  std::vector<PathTotals> partial(blocks);
  detail::for_each_block(sources.size(), blocks, [&](std::size_t b, std::size_t begin,
                                                     std::size_t end) {
    std::vector<std::uint32_t> dist(n, kUnreached);
    std::vector<NodeId> queue;
    queue.reserve(n);
    for (std::size_t i = begin; i < end; ++i) {
      const auto t = bfs_totals(g, sources[i], dist, queue);
      partial[b].distance_sum += t.distance_sum;
      partial[b].pairs += t.pairs;
      partial[b].eccentricity_max = std::max(partial[b].eccentricity_max, t.eccentricity_max);
    }
  });
  PathTotals total;
  for (const auto& p : partial) {
    total.distance_sum += p.distance_sum;
    total.pairs += p.pairs;
    total.eccentricity_max = std::max(total.eccentricity_max, p.eccentricity_max);
  }
  // Distances are symmetric, so the ordered-pair mean equals the unordered one.
  s.avg_shortest_path =
      static_cast<double>(total.distance_sum) / static_cast<double>(total.pairs);
  s.diameter = total.eccentricity_max;
  return s;
}

}  // namespace commcent
