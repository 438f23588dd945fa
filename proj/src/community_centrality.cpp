#include "commcent/community_centrality.hpp"

#include <algorithm>
#include <cmath>

#include "commcent/error.hpp"

namespace commcent {

namespace {

ScoreVector tagged(Measure m, const CommunityInputs& in) {
  return {m, std::vector<double>(in.graph().num_nodes(), 0.0),
          {{"partition", in.partition().fingerprint()},
           {"communities", std::to_string(in.partition().num_communities())}}};
}

}  // namespace

CommunityInputs::CommunityInputs(const Graph& g, const Partition& p,
                                 std::optional<ScoreVector> betweenness)
    : graph_(&g), partition_(&p), links_(g, p), betweenness_(std::move(betweenness)) {
  if (betweenness_ && betweenness_->size() != g.num_nodes())
    throw InvalidArgument("betweenness scores do not match the graph size");
}

ScoreVector neighboring_communities(const CommunityInputs& in) {
  auto out = tagged(Measure::neighboring_communities, in);
  for (NodeId u = 0; u < in.graph().num_nodes(); ++u) {
    const auto own = in.partition().community_of(u);
    std::size_t external = 0;
    for (const auto& e : in.links().by_community(u))
      if (e.community != own) ++external;
    out.values[u] = static_cast<double>(external);
  }
  return out;
}

ScoreVector community_hub_bridge(const CommunityInputs& in) {
  auto out = tagged(Measure::community_hub_bridge, in);
  const auto nnc = neighboring_communities(in);
  for (NodeId u = 0; u < in.graph().num_nodes(); ++u) {
    const auto size = static_cast<double>(in.partition().size(in.partition().community_of(u)));
    const double hub = size * in.links().intra(u);
    const double bridge = nnc.values[u] * in.links().inter(u);
    out.values[u] = hub + bridge;
  }
  return out;
}

ScoreVector participation_coefficient(const CommunityInputs& in) {
  auto out = tagged(Measure::participation_coefficient, in);
  for (NodeId u = 0; u < in.graph().num_nodes(); ++u) {
    const std::uint64_t k = in.links().total(u);
    if (k == 0) continue;
    // Integer sum of squares makes equal link profiles give identical values.
    std::uint64_t squares = 0;
    for (const auto& e : in.links().by_community(u))
      squares += static_cast<std::uint64_t>(e.links) * e.links;
    out.values[u] = 1.0 - static_cast<double>(squares) / static_cast<double>(k * k);
  }
  return out;
}

ScoreVector community_based_mediator(const CommunityInputs& in, MediatorWeighting weighting,
                                     LogBase base) {
  auto out = tagged(Measure::community_based_mediator, in);
  out.metadata.emplace_back("weighting", weighting == MediatorWeighting::link_fraction
                                             ? "link-fraction"
                                             : "community-density");
  out.metadata.emplace_back("log_base", base == LogBase::bits ? "2" : "e");
  const auto log_of = [base](double x) { return base == LogBase::bits ? std::log2(x) : std::log(x); };

  const double total_degree = 2.0 * static_cast<double>(in.graph().num_edges());
  std::vector<double> weights;
  for (NodeId u = 0; u < in.graph().num_nodes(); ++u) {
    const auto k = in.links().total(u);
    if (k == 0) continue;
    weights.clear();
    for (const auto& e : in.links().by_community(u)) {
      const double w = weighting == MediatorWeighting::link_fraction
                           ? static_cast<double>(e.links)
                           : static_cast<double>(e.links) /
                                 static_cast<double>(in.partition().size(e.community));
      weights.push_back(w);
    }
    // Sorted summation keeps the value independent of community numbering.
    std::sort(weights.begin(), weights.end());
    double norm = 0.0;
    for (double w : weights) norm += w;
    double entropy = 0.0;
    for (double w : weights) {
      const double rho = w / norm;
      if (rho > 0.0) entropy -= rho * log_of(rho);
    }
    out.values[u] = entropy * static_cast<double>(k) / total_degree;
  }
  return out;
}

ScoreVector bridging_centrality(const CommunityInputs& in) {
  if (!in.betweenness()) throw InvalidArgument("bridging centrality needs betweenness scores");
  const auto& g = in.graph();
  const auto& betweenness = *in.betweenness();
  auto out = tagged(Measure::bridging, in);
  out.metadata.erase(out.metadata.begin(), out.metadata.end());
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    if (g.degree(u) == 0 || betweenness.values[u] == 0.0) continue;
    double inverse_sum = 0.0;
    for (NodeId v : g.neighbors(u)) inverse_sum += 1.0 / static_cast<double>(g.degree(v));
    const double coefficient = (1.0 / static_cast<double>(g.degree(u))) / inverse_sum;
    out.values[u] = betweenness.values[u] * coefficient;
  }
  return out;
}

}  // namespace commcent
