#pragma once

#include <cstddef>
#include <cstdint>

#include "commcent/graph.hpp"
#include "commcent/partition.hpp"

namespace commcent {

struct InfomapOptions {
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  // Cap on node-move sweeps per aggregation level.
  std::size_t max_sweeps = 200;
};

struct DetectionResult {
  Partition partition;
  double codelength = 0.0;  // bits
  std::size_t best_trial = 0;
};

/// Two-level map-equation minimization: greedy node moves with community
/// aggregation, re-run from the node level until the codelength stops
/// improving. Each trial visits nodes in its own random order; the shortest
/// codelength wins and exact ties go to the lexicographically smallest
/// canonical assignment. Deterministic for a given (seed, trials).
DetectionResult detect_communities_infomap(const Graph& g, const InfomapOptions& options = {});

struct LabelPropagationOptions {
  std::uint64_t seed = 1;
  std::size_t max_iterations = 1000;
};

/// Asynchronous label propagation. A node keeps its label while it is among
/// the most frequent in its neighborhood, otherwise it takes one of the most
/// frequent labels uniformly at random.
Partition detect_communities_label_propagation(const Graph& g,
                                               const LabelPropagationOptions& options = {});

}  // namespace commcent
