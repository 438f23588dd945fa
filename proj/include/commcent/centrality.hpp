#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "commcent/graph.hpp"

namespace commcent {

enum class Measure {
  degree,
  betweenness,
  closeness,
  katz,
  pagerank,
  bridging,
  community_hub_bridge,
  participation_coefficient,
  community_based_mediator,
  neighboring_communities,
};

// Row and column order of the comparison matrices.
inline constexpr std::array<Measure, 5> kClassicalMeasures{
    Measure::degree, Measure::betweenness, Measure::closeness, Measure::katz, Measure::pagerank};
inline constexpr std::array<Measure, 5> kCommunityMeasures{
    Measure::bridging, Measure::community_hub_bridge, Measure::participation_coefficient,
    Measure::community_based_mediator, Measure::neighboring_communities};

/// Short machine id: degree, betweenness, closeness, katz, pagerank,
/// bridging, chb, pc, cbm, nnc.
std::string_view measure_id(Measure m);
/// Display symbol such as "α_d" or "β_CHB"; the part after '_' is a subscript.
std::string_view measure_symbol(Measure m);
std::optional<Measure> parse_measure(std::string_view id);

struct ScoreVector {
  Measure measure = Measure::degree;
  std::vector<double> values;
  // Parameters and provenance, e.g. {"attenuation", "0.0123"}.
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
};

struct CentralityParams {
  // Katz attenuation s. When unset, s = katz_fraction / lambda_max.
  std::optional<double> katz_attenuation;
  double katz_fraction = 0.9;
  double pagerank_damping = 0.85;
  double tolerance = 1e-10;
  std::size_t max_iterations = 10'000;
  double spectral_tolerance = 1e-8;
};

ScoreVector degree_centrality(const Graph& g);

/// Unnormalized betweenness over unordered pairs (Brandes accumulation).
ScoreVector betweenness_centrality(const Graph& g);

/// (N-1) / sum of distances. Throws DataError on a disconnected graph.
ScoreVector closeness_centrality(const Graph& g);

/// Largest adjacency eigenvalue by power iteration on A + I, which keeps the
/// dominant eigenvalue unique on bipartite graphs.
double spectral_radius(const Graph& g, double tolerance = 1e-8,
                       std::size_t max_iterations = 1'000'000);

/// Sum over walk lengths p >= 1 of s^p A^p 1, by the fixed point
/// x = s (A x + A 1). Throws NumericError when s >= 1/lambda_max or when the
/// iteration does not converge in the max norm.
ScoreVector katz_centrality(const Graph& g, const CentralityParams& params = {});

/// Undirected PageRank, every edge read as two arcs; sums to one.
ScoreVector pagerank_centrality(const Graph& g, const CentralityParams& params = {});

/// `# key=value` metadata lines, a `node_label,value` header, then one row
/// per node with round-trip decimal values.
void write_scores_csv(std::ostream& out, const Graph& g, const ScoreVector& scores);

/// Wide form: `node_label,<id>,<id>,...` with one column per vector.
void write_scores_table_csv(std::ostream& out, const Graph& g,
                            const std::vector<ScoreVector>& scores);

}  // namespace commcent
