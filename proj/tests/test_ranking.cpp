#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "commcent/error.hpp"
#include "commcent/ranking.hpp"
#include "fixtures.hpp"

using namespace commcent;
using namespace commcent::testing;

namespace {

std::vector<double> random_scores(std::mt19937_64& rng, std::size_t n, int distinct) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng() % static_cast<unsigned>(distinct));
  return v;
}

std::vector<NodeId> shuffled_ids(std::mt19937_64& rng, std::size_t n) {
  std::vector<NodeId> v(n);
  std::iota(v.begin(), v.end(), NodeId{0});
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

ScoreVector scores_of(Measure m, std::vector<double> v) { return {m, std::move(v), {}}; }

}  // namespace

TEST_CASE("tau-b on small cases") {
  const std::vector<double> a{1, 2, 3, 4};
  std::vector<double> r(a.rbegin(), a.rend());
  CHECK(*kendall_tau_b(a, a) == 1.0);
  CHECK(*kendall_tau_b(a, r) == -1.0);
  // Ties on both sides: concordant 4, discordant 0, denominators 5 and 5.
  const std::vector<double> x{1, 1, 2, 3}, y{1, 2, 2, 3};
  CHECK(*kendall_tau_b(x, y) == doctest::Approx(4.0 / 5.0));
  CHECK_FALSE(kendall_tau_b(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3}));
  CHECK_FALSE(kendall_tau_b(std::vector<double>{1, 2, 3}, std::vector<double>{5, 5, 5}));
  CHECK_THROWS_AS(kendall_tau_b(std::vector<double>{1}, std::vector<double>{1}), InvalidArgument);
  CHECK_THROWS_AS(kendall_tau_b(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), InvalidArgument);
  CHECK_THROWS_AS(kendall_tau_b(std::vector<double>{1, NAN}, std::vector<double>{1, 2}), InvalidArgument);
}

TEST_CASE("tau-b matches pair classification with heavy ties") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng() % 120;
    const auto a = random_scores(rng, n, 1 + static_cast<int>(rng() % 12));
    const auto b = random_scores(rng, n, 1 + static_cast<int>(rng() % 12));
    const auto fast = kendall_tau_b(a, b);
    const auto slow = brute_force_tau_b(a, b);
    REQUIRE(fast.has_value() == slow.has_value());
    if (fast) CHECK(*fast == doctest::Approx(*slow).epsilon(1e-12));
  }
}

TEST_CASE("tau-b is symmetric, invariant under monotone maps and flips under negation") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + rng() % 60;
    const auto a = random_scores(rng, n, 8);
    const auto b = random_scores(rng, n, 8);
    const auto t = kendall_tau_b(a, b);
    if (!t) continue;
    CHECK(*kendall_tau_b(b, a) == doctest::Approx(*t).epsilon(1e-15));
    std::vector<double> cubed(a), negated(b);
    for (auto& x : cubed) x = x * x * x + 7.0;
    for (auto& x : negated) x = -x;
    CHECK(*kendall_tau_b(cubed, b) == doctest::Approx(*t).epsilon(1e-15));
    CHECK(*kendall_tau_b(a, negated) == doctest::Approx(-*t).epsilon(1e-15));
  }
}

TEST_CASE("an adjacent swap moves tau by two over the pair count") {
  std::vector<double> a(10), b(10);
  std::iota(a.begin(), a.end(), 0.0);
  std::iota(b.begin(), b.end(), 0.0);
  std::swap(b[4], b[5]);
  CHECK(*kendall_tau_b(a, b) == doctest::Approx(1.0 - 2.0 / 45.0));
}

TEST_CASE("rank list ordering and tie groups") {
  const auto list = to_rank_list(scores_of(Measure::degree, {3, 5, 3, 1, 5}));
  CHECK(list.order == std::vector<NodeId>{1, 4, 0, 2, 3});
  CHECK(list.scores == std::vector<double>{5, 5, 3, 3, 1});
  REQUIRE(list.groups.size() == 3);
  CHECK(list.groups[0].begin == 0);
  CHECK(list.groups[0].end == 2);
  CHECK(list.groups[2].begin == 4);

  RankOptions loose;
  loose.tie_epsilon = 0.1;
  const auto fused = to_rank_list(scores_of(Measure::degree, {1.0, 0.95, 0.91, 0.5}), loose);
  REQUIRE(fused.groups.size() == 2);
  CHECK(fused.groups[0].end == 3);

  CHECK_THROWS_AS(to_rank_list(scores_of(Measure::degree, {1.0, INFINITY})), InvalidArgument);
  loose.tie_epsilon = -1;
  CHECK_THROWS_AS(to_rank_list(scores_of(Measure::degree, {1.0}), loose), InvalidArgument);
}

TEST_CASE("random tie policy only permutes inside groups and is seeded") {
  std::vector<double> v(40);
  for (std::size_t i = 0; i < 40; ++i) v[i] = static_cast<double>(i % 4);
  RankOptions opts;
  opts.tie_policy = TiePolicy::random;
  opts.seed = 5;
  const auto a = to_rank_list(scores_of(Measure::katz, v), opts);
  const auto b = to_rank_list(scores_of(Measure::katz, v), opts);
  CHECK(a.order == b.order);
  CHECK(a.order != to_rank_list(scores_of(Measure::katz, v)).order);
  for (std::size_t i = 0; i < 40; ++i) CHECK(v[a.order[i]] == a.scores[i]);
  CHECK(std::is_sorted(a.scores.rbegin(), a.scores.rend()));
}

TEST_CASE("rbo fixtures") {
  const std::vector<NodeId> a{0, 1}, r{1, 0};
  CHECK(rank_biased_overlap(a, r, 0.9) == doctest::Approx(0.9));
  CHECK(rank_biased_overlap(a, a, 0.9) == 1.0);
  CHECK(rank_biased_overlap(a, a, 0.9, RboVariant::truncated) == doctest::Approx(1.0 - 0.81));
  CHECK_THROWS_AS(rank_biased_overlap(a, r, 1.0), InvalidArgument);
  CHECK_THROWS_AS(rank_biased_overlap(a, r, 0.0), InvalidArgument);
  CHECK_THROWS_AS(rank_biased_overlap(a, std::vector<NodeId>{0, 2}, 0.9), InvalidArgument);
  CHECK_THROWS_AS(rank_biased_overlap(a, std::vector<NodeId>{0, 0}, 0.9), InvalidArgument);
  CHECK_THROWS_AS(rank_biased_overlap(a, std::vector<NodeId>{0, 1, 2}, 0.9), InvalidArgument);
  CHECK_THROWS_AS(rank_biased_overlap(std::vector<NodeId>{}, std::vector<NodeId>{}, 0.9), InvalidArgument);
}

TEST_CASE("rbo matches per-depth set intersections") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng() % 80;
    const double p = 0.05 + 0.9 * static_cast<double>(rng() % 1000) / 1000.0;
    const auto a = shuffled_ids(rng, n);
    auto b = a;
    // Partially scramble so overlaps span the full range.
    for (std::size_t k = 0; k < rng() % (n + 1); ++k) std::swap(b[rng() % n], b[rng() % n]);
    for (auto variant : {RboVariant::extrapolated, RboVariant::truncated}) {
      const double fast = rank_biased_overlap(a, b, p, variant);
      const double slow = naive_rbo(a, b, p, variant == RboVariant::extrapolated);
      CHECK(fast == doctest::Approx(slow).epsilon(1e-12));
      CHECK(fast >= 0.0);
      CHECK(fast <= 1.0);
    }
    CHECK(rank_biased_overlap(a, b, p) == doctest::Approx(rank_biased_overlap(b, a, p)).epsilon(1e-15));
    CHECK(rank_biased_overlap(a, a, p) == 1.0);
  }
}

TEST_CASE("rbo weighs the top of the list") {
  std::vector<NodeId> base(20);
  std::iota(base.begin(), base.end(), NodeId{0});
  auto top = base, bottom = base;
  std::swap(top[0], top[1]);
  std::swap(bottom[18], bottom[19]);
  CHECK(rank_biased_overlap(base, top, 0.9) < rank_biased_overlap(base, bottom, 0.9));
}

TEST_CASE("comparison matrices") {
  std::mt19937_64 rng(4);
  const std::size_t n = 30;
  std::vector<ScoreVector> classical, community;
  for (auto m : kClassicalMeasures) classical.push_back(scores_of(m, random_scores(rng, n, 10)));
  for (auto m : kCommunityMeasures) community.push_back(scores_of(m, random_scores(rng, n, 10)));
  community[4].values.assign(n, 0.0);

  const auto [tau, rbo] = compare_measures(classical, community);
  CHECK(tau.statistic == Statistic::tau_b);
  CHECK(rbo.statistic == Statistic::rbo);
  for (std::size_t r = 0; r < 5; ++r) {
    CHECK_FALSE(tau.values[r][4]);
    REQUIRE(rbo.values[r][4]);
    for (std::size_t c = 0; c < 4; ++c) {
      REQUIRE(tau.values[r][c]);
      CHECK(*tau.values[r][c] == *kendall_tau_b(classical[r].values, community[c].values));
      CHECK(*rbo.values[r][c] ==
            rank_biased_overlap(to_rank_list(classical[r]), to_rank_list(community[c]), 0.9));
    }
  }

  std::ostringstream out;
  write_matrix_csv(out, tau);
  const auto text = out.str();
  CHECK(text.rfind("classical,bridging,chb,pc,cbm,nnc\ndegree,", 0) == 0);
  CHECK(text.find(",\nbetweenness,") != std::string::npos);

  auto swapped = classical;
  std::swap(swapped[0], swapped[1]);
  CHECK_THROWS_AS(compare_measures(swapped, community), InvalidArgument);
  auto shorter = community;
  shorter[2].values.pop_back();
  CHECK_THROWS_AS(compare_measures(classical, shorter), InvalidArgument);
  CHECK_THROWS_AS(compare_measures(std::span(classical).first(4), community), InvalidArgument);
}
