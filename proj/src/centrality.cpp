#include "commcent/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "commcent/error.hpp"
#include "commcent/format.hpp"
#include "commcent/parallel.hpp"

namespace commcent {

namespace {

struct MeasureName {
  Measure measure;
  std::string_view id;
  std::string_view symbol;
};

constexpr std::array<MeasureName, 10> kNames{{
    {Measure::degree, "degree", "α_d"},
    {Measure::betweenness, "betweenness", "α_b"},
    {Measure::closeness, "closeness", "α_c"},
    {Measure::katz, "katz", "α_k"},
    {Measure::pagerank, "pagerank", "α_p"},
    {Measure::bridging, "bridging", "β_BC"},
    {Measure::community_hub_bridge, "chb", "β_CHB"},
    {Measure::participation_coefficient, "pc", "β_PC"},
    {Measure::community_based_mediator, "cbm", "β_CBM"},
    {Measure::neighboring_communities, "nnc", "β_NNC"},
}};

const MeasureName& name_of(Measure m) {
  return *std::find_if(kNames.begin(), kNames.end(),
                       [m](const MeasureName& n) { return n.measure == m; });
}

}  // namespace

std::string_view measure_id(Measure m) { return name_of(m).id; }
std::string_view measure_symbol(Measure m) { return name_of(m).symbol; }

std::optional<Measure> parse_measure(std::string_view id) {
  for (const auto& n : kNames)
    if (n.id == id) return n.measure;
  return std::nullopt;
}

ScoreVector degree_centrality(const Graph& g) {
  ScoreVector s{Measure::degree, std::vector<double>(g.num_nodes()), {}};
  for (NodeId u = 0; u < g.num_nodes(); ++u) s.values[u] = static_cast<double>(g.degree(u));
  return s;
}

ScoreVector betweenness_centrality(const Graph& g) {
  const std::size_t n = g.num_nodes();
  const std::size_t blocks = detail::block_count(n);
  std::vector<std::vector<double>> partial(blocks);

  detail::for_each_block(n, blocks, [&](std::size_t b, std::size_t begin, std::size_t end) {
    auto& acc = partial[b];
    acc.assign(n, 0.0);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::int64_t> dist(n, -1);
    std::vector<NodeId> order;
    order.reserve(n);
    for (std::size_t s = begin; s < end; ++s) {
      order.clear();
      order.push_back(static_cast<NodeId>(s));
      dist[s] = 0;
      sigma[s] = 1.0;
      for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId u = order[head];
        for (NodeId v : g.neighbors(u)) {
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            sigma[v] = 0.0;
            order.push_back(v);
          }
          if (dist[v] == dist[u] + 1) sigma[v] += sigma[u];
        }
      }
      // Dependency accumulation in reverse BFS order; predecessors are the
      // neighbors one level closer to the source.
      for (NodeId u : order) delta[u] = 0.0;
      for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const NodeId w = *it;
        for (NodeId v : g.neighbors(w))
          if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
        if (w != s) acc[w] += delta[w];
      }
      for (NodeId u : order) dist[u] = -1;
    }
  });

  ScoreVector out{Measure::betweenness, std::vector<double>(n, 0.0), {}};
  for (const auto& acc : partial)
    for (std::size_t i = 0; i < n; ++i) out.values[i] += acc[i];
  // Every unordered pair was visited from both endpoints.
  for (auto& v : out.values) v /= 2.0;
  return out;
}

ScoreVector closeness_centrality(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (!is_connected(g)) throw DataError("closeness needs a connected graph; extract the LCC first");
  ScoreVector out{Measure::closeness, std::vector<double>(n, 0.0), {}};
  if (n == 1) return out;
  const std::size_t blocks = detail::block_count(n);
  detail::for_each_block(n, blocks, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const auto dist = bfs_distances(g, static_cast<NodeId>(s));
      std::uint64_t total = 0;
      for (auto d : dist) total += d;
      out.values[s] = static_cast<double>(n - 1) / static_cast<double>(total);
    }
  });
  return out;
}

double spectral_radius(const Graph& g, double tolerance, std::size_t max_iterations) {
  const std::size_t n = g.num_nodes();
  if (g.num_edges() == 0) return 0.0;
  std::vector<double> v(n), next(n);
  for (NodeId u = 0; u < n; ++u) v[u] = 1.0 + static_cast<double>(g.degree(u));
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : v) x /= norm;

  double estimate = 0.0;
  for (std::size_t it = 0; it < max_iterations; ++it) {
    for (NodeId u = 0; u < n; ++u) {
      double sum = v[u];
      for (NodeId w : g.neighbors(u)) sum += v[w];
      next[u] = sum;
    }
    double rayleigh = 0.0, nn = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rayleigh += v[i] * next[i];
      nn += next[i] * next[i];
    }
    nn = std::sqrt(nn);
    for (std::size_t i = 0; i < n; ++i) v[i] = next[i] / nn;
    if (it > 0 && std::abs(rayleigh - estimate) <= tolerance * rayleigh) return rayleigh - 1.0;
    estimate = rayleigh;
  }
  throw NumericError(
      fmt::format("spectral radius did not converge within {} iterations", max_iterations));
}

ScoreVector katz_centrality(const Graph& g, const CentralityParams& params) {
  const std::size_t n = g.num_nodes();
  if (params.tolerance <= 0.0) throw InvalidArgument("tolerance must be positive");
  const double lambda = spectral_radius(g, params.spectral_tolerance);
  double s = 0.0;
  if (params.katz_attenuation) {
    s = *params.katz_attenuation;
    if (s < 0.0) throw InvalidArgument("katz attenuation must be non-negative");
    if (s * lambda >= 1.0)
      throw NumericError(fmt::format(
          "katz attenuation {} diverges: it must be below 1/lambda_max = {} (lambda_max = {})",
          format_double(s), format_double(1.0 / lambda), format_double(lambda)));
  } else {
    if (params.katz_fraction <= 0.0 || params.katz_fraction >= 1.0)
      throw InvalidArgument("katz fraction of 1/lambda_max must lie in (0, 1)");
    s = lambda > 0.0 ? params.katz_fraction / lambda : 0.0;
  }

  ScoreVector out{Measure::katz, std::vector<double>(n, 0.0), {}};
  out.metadata = {{"attenuation", format_double(s)}, {"lambda_max", format_double(lambda)}};
  if (s == 0.0) {
    out.metadata.emplace_back("iterations", "0");
    return out;
  }
  std::vector<double> next(n);
  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    double change = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      double sum = 0.0;
      for (NodeId w : g.neighbors(u)) sum += out.values[w] + 1.0;
      next[u] = s * sum;
      change = std::max(change, std::abs(next[u] - out.values[u]));
    }
    out.values.swap(next);
    if (change < params.tolerance) {
      out.metadata.emplace_back("iterations", std::to_string(it));
      return out;
    }
  }
  throw NumericError(
      fmt::format("katz did not converge within {} iterations", params.max_iterations));
}

ScoreVector pagerank_centrality(const Graph& g, const CentralityParams& params) {
  const std::size_t n = g.num_nodes();
  const double d = params.pagerank_damping;
  if (!(d >= 0.0 && d <= 1.0)) throw InvalidArgument("pagerank damping must lie in [0, 1]");
  if (params.tolerance <= 0.0) throw InvalidArgument("tolerance must be positive");
  for (NodeId u = 0; u < n; ++u)
    if (g.degree(u) == 0) throw DataError("pagerank needs every node to have a neighbor");

  const double base = (1.0 - d) / static_cast<double>(n);
  ScoreVector out{Measure::pagerank, std::vector<double>(n, 1.0 / static_cast<double>(n)), {}};
  out.metadata = {{"damping", format_double(d)}};
  std::vector<double> share(n), next(n);
  for (std::size_t it = 1; it <= params.max_iterations; ++it) {
    for (NodeId u = 0; u < n; ++u) share[u] = out.values[u] / static_cast<double>(g.degree(u));
    double change = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      double sum = 0.0;
      for (NodeId w : g.neighbors(u)) sum += share[w];
      next[u] = base + d * sum;
      change += std::abs(next[u] - out.values[u]);
    }
    out.values.swap(next);
    if (change < params.tolerance) {
      out.metadata.emplace_back("iterations", std::to_string(it));
      return out;
    }
  }
  throw NumericError(
      fmt::format("pagerank did not converge within {} iterations", params.max_iterations));
}

void write_scores_csv(std::ostream& out, const Graph& g, const ScoreVector& scores) {
  out << "# measure=" << measure_id(scores.measure) << '\n';
  for (const auto& [key, value] : scores.metadata) out << "# " << key << '=' << value << '\n';
  out << "node_label,value\n";
  for (NodeId u = 0; u < g.num_nodes(); ++u)
    out << g.label(u) << ',' << format_double(scores.values[u]) << '\n';
}

void write_scores_table_csv(std::ostream& out, const Graph& g,
                            const std::vector<ScoreVector>& scores) {
  out << "node_label";
  for (const auto& s : scores) out << ',' << measure_id(s.measure);
  out << '\n';
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    out << g.label(u);
    for (const auto& s : scores) out << ',' << format_double(s.values[u]);
    out << '\n';
  }
}

}  // namespace commcent
