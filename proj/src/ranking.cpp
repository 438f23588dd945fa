#include "commcent/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>

#include <fmt/format.h>

#include "commcent/error.hpp"
#include "commcent/format.hpp"

namespace commcent {

RankList to_rank_list(const ScoreVector& scores, const RankOptions& options) {
  const std::size_t n = scores.size();
  for (double v : scores.values)
    if (!std::isfinite(v)) throw InvalidArgument("cannot rank non-finite scores");
  if (options.tie_epsilon < 0.0) throw InvalidArgument("tie epsilon must be non-negative");

  RankList list;
  list.measure = scores.measure;
  list.order.resize(n);
  std::iota(list.order.begin(), list.order.end(), NodeId{0});
  std::sort(list.order.begin(), list.order.end(), [&](NodeId a, NodeId b) {
    if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
    return a < b;
  });

  const auto joins = [&](double head, double x) {
    if (head == x) return true;
    return std::abs(head - x) <= options.tie_epsilon * std::max(std::abs(head), std::abs(x));
  };
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && joins(scores.values[list.order[i]], scores.values[list.order[j]])) ++j;
    list.groups.push_back({i, j});
    i = j;
  }
  if (options.tie_policy == TiePolicy::random) {
    std::mt19937_64 rng(options.seed);
    for (const auto& g : list.groups)
      std::shuffle(list.order.begin() + static_cast<std::ptrdiff_t>(g.begin),
                   list.order.begin() + static_cast<std::ptrdiff_t>(g.end), rng);
  }
  list.scores.resize(n);
  for (std::size_t i = 0; i < n; ++i) list.scores[i] = scores.values[list.order[i]];
  return list;
}

namespace {

// Number of pairs inside runs of equal values in an already sorted sequence.
template <class Equal>
std::uint64_t tied_pairs(std::span<const std::size_t> idx, Equal&& equal) {
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i + 1;
    while (j < idx.size() && equal(idx[i], idx[j])) ++j;
    const std::uint64_t t = j - i;
    pairs += t * (t - 1) / 2;
    i = j;
  }
  return pairs;
}

// Stable merge sort of idx by key, returning the number of strict inversions.
std::uint64_t sort_counting_swaps(std::vector<std::size_t>& idx, std::span<const double> key) {
  std::vector<std::size_t> buffer(idx.size());
  std::uint64_t swaps = 0;
  for (std::size_t width = 1; width < idx.size(); width *= 2) {
    for (std::size_t lo = 0; lo < idx.size(); lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, idx.size());
      const std::size_t hi = std::min(lo + 2 * width, idx.size());
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) {
        if (key[idx[j]] < key[idx[i]]) {
          swaps += mid - i;
          buffer[k++] = idx[j++];
        } else {
          buffer[k++] = idx[i++];
        }
      }
      while (i < mid) buffer[k++] = idx[i++];
      while (j < hi) buffer[k++] = idx[j++];
    }
    idx.swap(buffer);
  }
  return swaps;
}

}  // namespace

std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidArgument("kendall tau-b needs equal-length vectors");
  const std::size_t n = a.size();
  if (n < 2) throw InvalidArgument("kendall tau-b needs at least two observations");
  for (std::size_t i = 0; i < n; ++i)
    if (std::isnan(a[i]) || std::isnan(b[i])) throw InvalidArgument("kendall tau-b input has NaN");

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return a[i] != a[j] ? a[i] < a[j] : b[i] < b[j];
  });
  const std::uint64_t tied_a = tied_pairs(idx, [&](std::size_t i, std::size_t j) { return a[i] == a[j]; });
  const std::uint64_t tied_both =
      tied_pairs(idx, [&](std::size_t i, std::size_t j) { return a[i] == a[j] && b[i] == b[j]; });
  // With ties in a pre-sorted by b, every strict inversion is a discordant pair.
  const std::uint64_t discordant = sort_counting_swaps(idx, b);
  const std::uint64_t tied_b = tied_pairs(idx, [&](std::size_t i, std::size_t j) { return b[i] == b[j]; });

  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const std::uint64_t not_tied_a = total - tied_a;
  const std::uint64_t not_tied_b = total - tied_b;
  if (not_tied_a == 0 || not_tied_b == 0) return std::nullopt;
  const std::uint64_t concordant = total - tied_a - tied_b + tied_both - discordant;
  // The product of pair counts stays exact in long double up to n of about 2^16.
  const long double numerator =
      static_cast<long double>(concordant) - static_cast<long double>(discordant);
  const long double denominator =
      std::sqrt(static_cast<long double>(not_tied_a) * static_cast<long double>(not_tied_b));
  return std::clamp(static_cast<double>(numerator / denominator), -1.0, 1.0);
}

double rank_biased_overlap(std::span<const NodeId> a, std::span<const NodeId> b, double p,
                           RboVariant variant) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("rbo persistence p must lie in (0, 1)");
  if (a.size() != b.size()) throw InvalidArgument("rbo lists rank different node sets");
  const std::size_t n = a.size();
  if (n == 0) throw InvalidArgument("rbo needs non-empty lists");
  NodeId max_id = 0;
  for (std::size_t i = 0; i < n; ++i) max_id = std::max({max_id, a[i], b[i]});
  std::vector<std::uint8_t> in_a(max_id + 1u, 0), in_b(max_id + 1u, 0);

  std::size_t overlap = 0;
  double sum = 0.0;
  double weight = 1.0 - p;  // (1 - p) p^(d-1)
  double tail = 1.0;        // p^d
  bool identical = true;
  for (std::size_t d = 1; d <= n; ++d) {
    const NodeId x = a[d - 1];
    const NodeId y = b[d - 1];
    if (in_a[x] || in_b[y]) throw InvalidArgument("rbo list repeats a node");
    in_a[x] = 1;
    in_b[y] = 1;
    if (x == y) {
      ++overlap;
    } else {
      identical = false;
      overlap += in_b[x] + in_a[y];
    }
    sum += weight * static_cast<double>(overlap) / static_cast<double>(d);
    weight *= p;
    tail *= p;
  }
  if (overlap != n) throw InvalidArgument("rbo lists rank different node sets");
  if (variant == RboVariant::truncated) return sum;
  if (identical) return 1.0;
  return std::min(1.0, sum + tail);  // depth-N agreement is overlap/N = 1
}

double rank_biased_overlap(const RankList& a, const RankList& b, double p, RboVariant variant) {
  return rank_biased_overlap(std::span<const NodeId>(a.order), std::span<const NodeId>(b.order), p,
                             variant);
}

std::pair<ComparisonMatrix, ComparisonMatrix> compare_measures(
    std::span<const ScoreVector> classical, std::span<const ScoreVector> community,
    const CompareOptions& options) {
  if (classical.size() != 5 || community.size() != 5)
    throw InvalidArgument("comparison needs five classical and five community-aware vectors");
  for (std::size_t i = 0; i < 5; ++i) {
    if (classical[i].measure != kClassicalMeasures[i] || community[i].measure != kCommunityMeasures[i])
      throw InvalidArgument("score vectors are not in matrix order");
    if (classical[i].size() != classical[0].size() || community[i].size() != classical[0].size())
      throw InvalidArgument("score vectors cover different node counts");
  }
  if (classical[0].size() < 2) throw InvalidArgument("comparison needs at least two nodes");

  std::vector<RankList> classical_ranks(5), community_ranks(5);
  for (std::size_t i = 0; i < 5; ++i) {
    auto ro = options.ranking;
    ro.seed = derive_seed(options.ranking.seed, static_cast<std::uint64_t>(classical[i].measure));
    classical_ranks[i] = to_rank_list(classical[i], ro);
    ro.seed = derive_seed(options.ranking.seed, static_cast<std::uint64_t>(community[i].measure));
    community_ranks[i] = to_rank_list(community[i], ro);
  }

  ComparisonMatrix tau{Statistic::tau_b, options.rbo_p, {}};
  ComparisonMatrix rbo{Statistic::rbo, options.rbo_p, {}};
#pragma omp parallel for schedule(dynamic, 1)
  for (int cell = 0; cell < 25; ++cell) {
    const auto r = static_cast<std::size_t>(cell / 5);
    const auto c = static_cast<std::size_t>(cell % 5);
    tau.values[r][c] = kendall_tau_b(classical[r].values, community[c].values);
    rbo.values[r][c] =
        rank_biased_overlap(classical_ranks[r], community_ranks[c], options.rbo_p, options.rbo_variant);
  }
  return {tau, rbo};
}

std::string_view statistic_id(Statistic s) { return s == Statistic::tau_b ? "tau_b" : "rbo"; }

void write_matrix_csv(std::ostream& out, const ComparisonMatrix& matrix) {
  out << "classical";
  for (auto m : kCommunityMeasures) out << ',' << measure_id(m);
  out << '\n';
  for (std::size_t r = 0; r < 5; ++r) {
    out << measure_id(kClassicalMeasures[r]);
    for (std::size_t c = 0; c < 5; ++c) {
      out << ',';
      if (matrix.values[r][c]) out << format_double(*matrix.values[r][c]);
    }
    out << '\n';
  }
}

}  // namespace commcent
