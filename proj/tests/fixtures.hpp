#pragma once

// Graph builders and brute-force reference implementations used only by the
// tests. Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "commcent/graph.hpp"

namespace commcent::testing {

inline Graph make_graph(std::size_t n, std::vector<Edge> edges) {
  return Graph::from_edges(n, edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return make_graph(n, e);
}

// Node 0 is the center.
inline Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(0, i);
  return make_graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

// Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph barbell_of_triangles() {
  return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

// Cliques {0..k-1} and {k..2k-1} joined by the edge (k-1, k).
inline Graph two_cliques(std::size_t k) {
  std::vector<Edge> e;
  for (NodeId base : {NodeId{0}, static_cast<NodeId>(k)})
    for (NodeId i = 0; i < k; ++i)
      for (NodeId j = i + 1; j < k; ++j) e.emplace_back(base + i, base + j);
  e.emplace_back(static_cast<NodeId>(k - 1), static_cast<NodeId>(k));
  return make_graph(2 * k, e);
}

// Random spanning tree plus extra random edges: always connected.
inline Graph random_connected_graph(std::mt19937_64& rng, std::size_t n, double extra_density) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    e.emplace_back(parent(rng), v);
  }
  std::bernoulli_distribution coin(extra_density);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (coin(rng)) e.emplace_back(u, v);
  return make_graph(n, e);
}

inline std::vector<std::vector<int>> adjacency_matrix(const Graph& g) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  g.for_each_edge([&](NodeId u, NodeId v) { a[u][v] = a[v][u] = 1; });
  return a;
}

// Floyd-Warshall hop distances; INT_MAX/4 for unreachable.
inline std::vector<std::vector<long long>> all_pairs_distances(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const long long inf = std::numeric_limits<long long>::max() / 4;
  std::vector<std::vector<long long>> d(n, std::vector<long long>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  g.for_each_edge([&](NodeId u, NodeId v) { d[u][v] = d[v][u] = 1; });
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

// Number of shortest paths between every pair, by dynamic programming over
// distance layers of the Floyd-Warshall matrix.
inline std::vector<std::vector<double>> shortest_path_counts(const Graph& g,
                                                             const std::vector<std::vector<long long>>& d) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::size_t> by_dist(n);
    std::iota(by_dist.begin(), by_dist.end(), 0);
    std::sort(by_dist.begin(), by_dist.end(), [&](auto x, auto y) { return d[s][x] < d[s][y]; });
    sigma[s][s] = 1.0;
    for (auto t : by_dist) {
      if (t == s) continue;
      for (NodeId w : g.neighbors(static_cast<NodeId>(t)))
        if (d[s][w] + 1 == d[s][t]) sigma[s][t] += sigma[s][w];
    }
  }
  return sigma;
}

// Betweenness from the pair definition: sum over unordered pairs {s,t} not
// containing i of sigma_i(s,t) / sigma(s,t), with
// sigma_i(s,t) = sigma(s,i) sigma(i,t) when i lies on a shortest s-t path.
inline std::vector<double> brute_force_betweenness(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const auto d = all_pairs_distances(g);
  const auto sigma = shortest_path_counts(g, d);
  std::vector<double> bc(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      if (sigma[s][t] == 0.0) continue;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == s || i == t) continue;
        if (d[s][i] + d[i][t] == d[s][t]) bc[i] += sigma[s][i] * sigma[i][t] / sigma[s][t];
      }
    }
  return bc;
}

// O(n^2) pair classification.
inline std::optional<double> brute_force_tau_b(const std::vector<double>& a, const std::vector<double>& b) {
  long long concordant = 0, discordant = 0, only_a = 0, only_b = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool ta = a[i] == a[j];
      const bool tb = b[i] == b[j];
      if (ta && tb) continue;
      if (ta) {
        ++only_a;
      } else if (tb) {
        ++only_b;
      } else if ((a[i] < a[j]) == (b[i] < b[j])) {
        ++concordant;
      } else {
        ++discordant;
      }
    }
  const double den = std::sqrt(static_cast<double>(concordant + discordant + only_a) *
                               static_cast<double>(concordant + discordant + only_b));
  if (den == 0.0) return std::nullopt;
  return static_cast<double>(concordant - discordant) / den;
}

// Literal per-depth summation with explicit prefix set intersections.
inline double naive_rbo(const std::vector<NodeId>& a, const std::vector<NodeId>& b, double p,
                        bool extrapolate) {
  const std::size_t n = a.size();
  double sum = 0.0;
  double overlap_n = 0.0;
  for (std::size_t d = 1; d <= n; ++d) {
    std::set<NodeId> pa(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(d));
    std::set<NodeId> pb(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(d));
    std::vector<NodeId> common;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
    sum += (1.0 - p) * std::pow(p, static_cast<double>(d - 1)) * static_cast<double>(common.size()) /
           static_cast<double>(d);
    if (d == n) overlap_n = static_cast<double>(common.size());
  }
  if (extrapolate) sum += std::pow(p, static_cast<double>(n)) * overlap_n / static_cast<double>(n);
  return sum;
}

// Map equation in its unexpanded form,
//   L = q H(Q) + sum_i p_i H(P_i),
// straight from module exit rates and node visit rates.
inline double direct_map_equation(const Graph& g, const std::vector<int>& module) {
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  int k = 0;
  for (int m : module) k = std::max(k, m + 1);
  std::vector<double> exit(static_cast<std::size_t>(k), 0.0);
  g.for_each_edge([&](NodeId u, NodeId v) {
    if (module[u] != module[v]) {
      exit[static_cast<std::size_t>(module[u])] += 1.0 / two_m;
      exit[static_cast<std::size_t>(module[v])] += 1.0 / two_m;
    }
  });
  const auto entropy = [](const std::vector<double>& w) {
    double total = 0.0;
    for (double x : w) total += x;
    double h = 0.0;
    if (total <= 0.0) return 0.0;
    for (double x : w)
      if (x > 0.0) h -= (x / total) * std::log2(x / total);
    return h;
  };
  double q = 0.0;
  for (double x : exit) q += x;
  double length = q * entropy(exit);
  for (int c = 0; c < k; ++c) {
    std::vector<double> w{exit[static_cast<std::size_t>(c)]};
    for (NodeId u = 0; u < g.num_nodes(); ++u)
      if (module[u] == c) w.push_back(static_cast<double>(g.degree(u)) / two_m);
    double pc = 0.0;
    for (double x : w) pc += x;
    length += pc * entropy(w);
  }
  return length;
}

// Calls f on every set partition of n elements, as restricted growth strings.
inline void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> a(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int max_used) {
    if (i == n) {
      f(a);
      return;
    }
    for (int c = 0; c <= max_used + 1; ++c) {
      a[i] = c;
      rec(i + 1, std::max(max_used, c));
    }
  };
  if (n == 0) return;
  a[0] = 0;
  rec(1, 0);
}

inline double exhaustive_min_map_equation(const Graph& g, std::vector<int>* argmin = nullptr) {
  double best = std::numeric_limits<double>::infinity();
  for_each_set_partition(g.num_nodes(), [&](const std::vector<int>& a) {
    const double l = direct_map_equation(g, a);
    if (l < best) {
      best = l;
      if (argmin) *argmin = a;
    }
  });
  return best;
}

// Q = (1/2m) sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j) over all ordered pairs.
inline double pairwise_modularity(const Graph& g, const std::vector<int>& module) {
  const auto a = adjacency_matrix(g);
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  double q = 0.0;
  for (NodeId i = 0; i < g.num_nodes(); ++i)
    for (NodeId j = 0; j < g.num_nodes(); ++j)
      if (module[i] == module[j])
        q += a[i][j] - static_cast<double>(g.degree(i)) * static_cast<double>(g.degree(j)) / two_m;
  return q / two_m;
}

}  // namespace commcent::testing
