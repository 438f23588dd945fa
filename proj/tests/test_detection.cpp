#include <doctest.h>

#include <random>

#include "commcent/detection.hpp"
#include "commcent/partition.hpp"
#include "fixtures.hpp"

using namespace commcent;
using namespace commcent::testing;

namespace {

// Planted groups of equal size with dense insides and sparse crossings.
Graph planted_groups(std::mt19937_64& rng, std::size_t groups, std::size_t size, double p_in,
                     double p_out) {
  const std::size_t n = groups * size;
  std::vector<Edge> e;
  std::bernoulli_distribution in(p_in), out(p_out);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (u / size == v / size ? in(rng) : out(rng)) e.emplace_back(u, v);
  // Chain the groups so the graph is connected.
  for (std::size_t gi = 0; gi + 1 < groups; ++gi)
    e.emplace_back(static_cast<NodeId>(gi * size), static_cast<NodeId>((gi + 1) * size));
  return make_graph(n, e);
}

std::vector<std::uint32_t> block_assignment(std::size_t groups, std::size_t size) {
  std::vector<std::uint32_t> a(groups * size);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<std::uint32_t>(i / size);
  return a;
}

}  // namespace

TEST_CASE("infomap splits the barbell at its bridge") {
  const auto g = barbell_of_triangles();
  const auto r = detect_communities_infomap(g);
  const std::vector<std::uint32_t> planted{0, 0, 0, 1, 1, 1};
  CHECK(r.partition == Partition(planted));
  CHECK(r.codelength == doctest::Approx(2.3207303568337903).epsilon(1e-12));
  CHECK(r.best_trial < 10);
}

TEST_CASE("infomap separates two cliques joined by one edge") {
  const auto g = two_cliques(10);
  const auto r = detect_communities_infomap(g);
  CHECK(r.partition == Partition(block_assignment(2, 10)));
  CHECK(r.codelength == doctest::Approx(map_equation(g, r.partition)).epsilon(1e-12));
}

TEST_CASE("infomap keeps a clique whole") {
  const auto r = detect_communities_infomap(complete_graph(8));
  CHECK(r.partition.num_communities() == 1);
}

TEST_CASE("infomap recovers planted groups") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = planted_groups(rng, 4, 12, 0.7, 0.02);
    const auto r = detect_communities_infomap(g);
    CHECK(r.partition == Partition(block_assignment(4, 12)));
  }
}

TEST_CASE("infomap reports the codelength of its partition and never loses to the trivial one") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    const auto g = random_connected_graph(rng, 10 + rng() % 50, 0.08);
    const auto r = detect_communities_infomap(g);
    CHECK(r.codelength == doctest::Approx(map_equation(g, r.partition)).epsilon(1e-12));
    CHECK(r.codelength <= map_equation(g, Partition::single(g.num_nodes())) + 1e-12);
  }
}

TEST_CASE("infomap is deterministic for a seed and more trials never hurt") {
  std::mt19937_64 rng(99);
  const auto g = random_connected_graph(rng, 80, 0.05);
  InfomapOptions a;
  a.seed = 7;
  const auto r1 = detect_communities_infomap(g, a);
  const auto r2 = detect_communities_infomap(g, a);
  CHECK(r1.partition == r2.partition);
  CHECK(r1.codelength == r2.codelength);
  CHECK(r1.best_trial == r2.best_trial);

  InfomapOptions more = a;
  more.trials = 20;
  CHECK(detect_communities_infomap(g, more).codelength <= r1.codelength + 1e-12);
}

TEST_CASE("infomap reaches the exhaustive optimum on small graphs") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    const auto g = random_connected_graph(rng, 4 + rng() % 4, 0.25);
    InfomapOptions opts;
    opts.trials = 20;
    const auto r = detect_communities_infomap(g, opts);
    CHECK(r.codelength == doctest::Approx(exhaustive_min_map_equation(g)).epsilon(1e-12));
  }
}

TEST_CASE("infomap handles trivial graphs") {
  const auto r = detect_communities_infomap(path_graph(2));
  CHECK(r.partition.num_nodes() == 2);
  CHECK(r.partition.num_communities() == 1);
}

TEST_CASE("label propagation collapses a star") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LabelPropagationOptions opts;
    opts.seed = seed;
    CHECK(detect_communities_label_propagation(star_graph(7), opts).num_communities() == 1);
  }
}

TEST_CASE("label propagation keeps each clique together") {
  const auto g = two_cliques(10);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LabelPropagationOptions opts;
    opts.seed = seed;
    const auto p = detect_communities_label_propagation(g, opts);
    CHECK(p.num_communities() <= 2);
    for (NodeId u = 1; u < 9; ++u) CHECK(p.community_of(u) == p.community_of(0));
    for (NodeId u = 11; u < 20; ++u) CHECK(p.community_of(u) == p.community_of(19));
    CHECK(p == detect_communities_label_propagation(g, opts));
  }
}

TEST_CASE("label propagation leaves isolated nodes alone") {
  const auto g = make_graph(4, {{0, 1}});
  const auto p = detect_communities_label_propagation(g);
  CHECK(p.community_of(0) == p.community_of(1));
  CHECK(p.community_of(2) != p.community_of(3));
}
