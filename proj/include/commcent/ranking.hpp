#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "commcent/centrality.hpp"
#include "commcent/graph.hpp"

namespace commcent {

enum class TiePolicy {
  node_id,  // tied nodes ordered by ascending id
  random,   // tied nodes shuffled with a seeded generator
};

struct TieGroup {
  std::size_t begin;
  std::size_t end;  // exclusive
};

/// Nodes ordered by descending score, with the runs of tied scores recorded.
struct RankList {
  Measure measure = Measure::degree;
  std::vector<NodeId> order;
  std::vector<double> scores;  // scores[i] belongs to order[i]
  std::vector<TieGroup> groups;

  std::size_t size() const noexcept { return order.size(); }
};

struct RankOptions {
  // Scores whose relative difference to the head of a tie group is within
  // this bound join the group. Zero means exact equality.
  double tie_epsilon = 0.0;
  TiePolicy tie_policy = TiePolicy::node_id;
  std::uint64_t seed = 0;
};

RankList to_rank_list(const ScoreVector& scores, const RankOptions& options = {});

/// Kendall tau-b from concordant/discordant pair counts with the tie-corrected
/// denominator, in O(n log n). Ties are exact score equality. Returns nullopt
/// when either vector is fully tied (zero denominator).
std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b);

enum class RboVariant {
  // Residual weight past depth N carries the depth-N agreement, so RBO(a, a) = 1.
  extrapolated,
  // Plain geometric sum cut at depth N.
  truncated,
};

/// Rank-biased overlap of two orderings of the same node set.
/// Throws InvalidArgument when p is outside (0, 1) or the node sets differ.
double rank_biased_overlap(std::span<const NodeId> a, std::span<const NodeId> b, double p,
                           RboVariant variant = RboVariant::extrapolated);
double rank_biased_overlap(const RankList& a, const RankList& b, double p,
                           RboVariant variant = RboVariant::extrapolated);

enum class Statistic { tau_b, rbo };

/// Classical measures on rows, community-aware measures on columns, both in
/// the kClassicalMeasures / kCommunityMeasures order. Undefined cells are empty.
struct ComparisonMatrix {
  Statistic statistic = Statistic::tau_b;
  double rbo_p = 0.9;
  std::array<std::array<std::optional<double>, 5>, 5> values{};
};

struct CompareOptions {
  double rbo_p = 0.9;
  RboVariant rbo_variant = RboVariant::extrapolated;
  RankOptions ranking;
};

/// Fills both matrices. `classical` and `community` must follow the
/// kClassicalMeasures and kCommunityMeasures orders.
std::pair<ComparisonMatrix, ComparisonMatrix> compare_measures(
    std::span<const ScoreVector> classical, std::span<const ScoreVector> community,
    const CompareOptions& options = {});

/// Header `classical,bridging,chb,pc,cbm,nnc`; undefined cells are blank.
void write_matrix_csv(std::ostream& out, const ComparisonMatrix& matrix);

std::string_view statistic_id(Statistic s);

}  // namespace commcent
