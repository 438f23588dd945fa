#pragma once

#include <optional>

#include "commcent/centrality.hpp"
#include "commcent/graph.hpp"
#include "commcent/partition.hpp"

namespace commcent {

// How CBM turns a node's links into the distribution it takes the entropy of.
enum class MediatorWeighting {
  // rho_{i,c} = k_{i,c} / k_i
  link_fraction,
  // rho_{i,c} proportional to k_{i,c} / |c|, normalized over the communities i touches
  community_density,
};

enum class LogBase { bits, nats };

/// Graph, partition and the derived link decomposition, plus the betweenness
/// scores bridging centrality is built on.
class CommunityInputs {
 public:
  CommunityInputs(const Graph& g, const Partition& p, std::optional<ScoreVector> betweenness = {});
  // The graph and partition are referenced, not copied.
  CommunityInputs(Graph&&, const Partition&, std::optional<ScoreVector> = {}) = delete;
  CommunityInputs(const Graph&, Partition&&, std::optional<ScoreVector> = {}) = delete;

  const Graph& graph() const noexcept { return *graph_; }
  const Partition& partition() const noexcept { return *partition_; }
  const LinkDecomposition& links() const noexcept { return links_; }
  const std::optional<ScoreVector>& betweenness() const noexcept { return betweenness_; }

 private:
  const Graph* graph_;
  const Partition* partition_;
  LinkDecomposition links_;
  std::optional<ScoreVector> betweenness_;
};

/// Number of communities other than its own that a node has a neighbor in.
ScoreVector neighboring_communities(const CommunityInputs& in);

/// |c_k| * k^intra + NNC * k^inter.
ScoreVector community_hub_bridge(const CommunityInputs& in);

/// 1 - sum over all communities (own included) of (k_{i,c} / k_i)^2.
ScoreVector participation_coefficient(const CommunityInputs& in);

/// Link-type entropy H_i scaled by k_i / sum_j k_j; 0 log 0 = 0.
ScoreVector community_based_mediator(const CommunityInputs& in,
                                     MediatorWeighting weighting = MediatorWeighting::link_fraction,
                                     LogBase base = LogBase::bits);

/// Betweenness times the bridging coefficient
/// B(i) = (1/k_i) / sum over neighbors j of 1/k_j.
/// Throws InvalidArgument if the inputs carry no betweenness scores.
ScoreVector bridging_centrality(const CommunityInputs& in);

}  // namespace commcent
