#include "commcent/detection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "commcent/format.hpp"

namespace commcent {

namespace {

double plogp(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// Smallest codelength decrease accepted for a move, in bits.
constexpr double kMinImprovement = 1e-10;

// One aggregation level of the flow graph. All flows are integer multiples of
// 1/2m (node flow = degree, exit flow = number of boundary link ends), so
// the state is kept in exact integer link counts.
struct Level {
  std::vector<std::uint64_t> flow;
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;
  std::vector<std::uint64_t> weights;
  std::vector<std::uint64_t> exit;  // links leaving the level node

  std::size_t size() const { return flow.size(); }
};

Level node_level(const Graph& g) {
  Level level;
  const std::size_t n = g.num_nodes();
  level.flow.resize(n);
  level.exit.resize(n);
  level.offsets.assign(n + 1, 0);
  for (NodeId u = 0; u < n; ++u) {
    level.flow[u] = g.degree(u);
    level.exit[u] = g.degree(u);
    for (NodeId v : g.neighbors(u)) {
      level.targets.push_back(v);
      level.weights.push_back(1);
    }
    level.offsets[u + 1] = level.targets.size();
  }
  return level;
}

class Optimizer {
 public:
  Optimizer(const Level& level, std::vector<std::uint32_t> module, double unit)
      : level_(level), module_(std::move(module)), unit_(unit) {
    const std::size_t n = level.size();
    module_flow_.assign(n, 0);
    module_exit_.assign(n, 0);
    module_members_.assign(n, 0);
    for (std::uint32_t a = 0; a < n; ++a) {
      const auto m = module_[a];
      module_flow_[m] += level.flow[a];
      module_exit_[m] += level.exit[a];
      ++module_members_[m];
      for (std::size_t e = level.offsets[a]; e < level.offsets[a + 1]; ++e)
        if (module_[level.targets[e]] == m) module_exit_[m] -= level.weights[e];
    }
    for (std::uint32_t m = 0; m < n; ++m) {
      if (module_members_[m] == 0) empty_.push_back(m);
      total_exit_ += module_exit_[m];
    }
    link_to_.assign(n, 0);
    seen_.assign(n, 0);
  }

  // Greedy node moves until a sweep moves nothing. Returns the number of moves.
  std::size_t sweep_until_stable(std::mt19937_64& rng, std::size_t max_sweeps) {
    std::vector<std::uint32_t> order(level_.size());
    std::iota(order.begin(), order.end(), 0u);
    std::size_t total_moves = 0;
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
      std::shuffle(order.begin(), order.end(), rng);
      std::size_t moves = 0;
      for (auto a : order) moves += try_move(a) ? 1 : 0;
      total_moves += moves;
      if (moves == 0) break;
    }
    return total_moves;
  }

  const std::vector<std::uint32_t>& modules() const { return module_; }
  std::uint64_t module_flow(std::uint32_t m) const { return module_flow_[m]; }
  std::uint64_t module_exit(std::uint32_t m) const { return module_exit_[m]; }

 private:
  double term(std::uint64_t links) const { return plogp(static_cast<double>(links) * unit_); }

  bool try_move(std::uint32_t a) {
    const auto old_m = module_[a];
    ++stamp_;
    candidates_.clear();
    std::uint64_t to_old = 0;
    for (std::size_t e = level_.offsets[a]; e < level_.offsets[a + 1]; ++e) {
      const auto b = level_.targets[e];
      if (b == a) continue;
      const auto m = module_[b];
      if (m == old_m) {
        to_old += level_.weights[e];
        continue;
      }
      if (seen_[m] != stamp_) {
        seen_[m] = stamp_;
        link_to_[m] = 0;
        candidates_.push_back(m);
      }
      link_to_[m] += level_.weights[e];
    }
    if (module_members_[old_m] > 1 && !empty_.empty()) {
      const auto m = empty_.back();
      seen_[m] = stamp_;
      link_to_[m] = 0;
      candidates_.push_back(m);
    }
    if (candidates_.empty()) return false;

    const std::uint64_t f = level_.flow[a];
    const std::uint64_t x = level_.exit[a];
    const std::uint64_t old_exit = module_exit_[old_m];
    const std::uint64_t old_flow = module_flow_[old_m];
    const std::uint64_t old_exit_after = old_exit + 2 * to_old - x;
    const std::uint64_t old_flow_after = old_flow - f;

    double best_delta = -kMinImprovement;
    std::uint32_t best_m = old_m;
    std::uint64_t best_exit_after = 0;
    for (auto m : candidates_) {
      const std::uint64_t exit_m = module_exit_[m];
      const std::uint64_t exit_after = exit_m + x - 2 * link_to_[m];
      const std::uint64_t total_after = total_exit_ - old_exit - exit_m + old_exit_after + exit_after;
      const double delta =
          term(total_after) - term(total_exit_) -
          2.0 * (term(old_exit_after) + term(exit_after) - term(old_exit) - term(exit_m)) +
          term(old_exit_after + old_flow_after) + term(exit_after + module_flow_[m] + f) -
          term(old_exit + old_flow) - term(exit_m + module_flow_[m]);
      if (delta < best_delta) {
        best_delta = delta;
        best_m = m;
        best_exit_after = exit_after;
      }
    }
    if (best_m == old_m) return false;

    if (module_members_[best_m] == 0) empty_.erase(std::find(empty_.begin(), empty_.end(), best_m));
    total_exit_ = total_exit_ - old_exit - module_exit_[best_m] + old_exit_after + best_exit_after;
    module_exit_[old_m] = old_exit_after;
    module_flow_[old_m] = old_flow_after;
    --module_members_[old_m];
    module_exit_[best_m] = best_exit_after;
    module_flow_[best_m] += f;
    ++module_members_[best_m];
    module_[a] = best_m;
    if (module_members_[old_m] == 0) empty_.push_back(old_m);
    return true;
  }

  const Level& level_;
  std::vector<std::uint32_t> module_;
  double unit_;
  std::vector<std::uint64_t> module_flow_;
  std::vector<std::uint64_t> module_exit_;
  std::vector<std::uint32_t> module_members_;
  std::vector<std::uint32_t> empty_;
  std::uint64_t total_exit_ = 0;

  std::vector<std::uint64_t> link_to_;
  std::vector<std::uint64_t> seen_;
  std::uint64_t stamp_ = 0;
  std::vector<std::uint32_t> candidates_;
};

// Collapses each module of `level` into one node. `dense` maps module id to
// the new node id.
Level aggregate(const Level& level, const Optimizer& opt, const std::vector<std::uint32_t>& dense,
                std::size_t count) {
  Level next;
  next.flow.assign(count, 0);
  next.exit.assign(count, 0);
  next.offsets.assign(count + 1, 0);
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> rows(count);
  const auto& module = opt.modules();
  for (std::uint32_t a = 0; a < level.size(); ++a) {
    const auto ma = dense[module[a]];
    for (std::size_t e = level.offsets[a]; e < level.offsets[a + 1]; ++e) {
      const auto mb = dense[module[level.targets[e]]];
      if (ma != mb) rows[ma].emplace_back(mb, level.weights[e]);
    }
  }
  for (std::uint32_t m = 0; m < module.size(); ++m) {
    if (dense[m] == UINT32_MAX) continue;
    next.flow[dense[m]] = opt.module_flow(m);
    next.exit[dense[m]] = opt.module_exit(m);
  }
  for (std::size_t a = 0; a < count; ++a) {
    auto& row = rows[a];
    std::sort(row.begin(), row.end());
    for (std::size_t i = 0; i < row.size();) {
      std::uint64_t w = 0;
      std::size_t j = i;
      while (j < row.size() && row[j].first == row[i].first) w += row[j++].second;
      next.targets.push_back(row[i].first);
      next.weights.push_back(w);
      i = j;
    }
    next.offsets[a + 1] = next.targets.size();
  }
  return next;
}

// Multi-level greedy optimization starting from `initial` (one module id per
// graph node). Returns the refined node assignment.
std::vector<std::uint32_t> optimize_from(const Level& base, const std::vector<std::uint32_t>& initial,
                                         double unit, std::mt19937_64& rng,
                                         std::size_t max_sweeps) {
  std::vector<std::uint32_t> node_to_level(base.size());
  std::iota(node_to_level.begin(), node_to_level.end(), 0u);
  Level owned;
  const Level* current = &base;
  std::vector<std::uint32_t> start = initial;

  while (true) {
    Optimizer opt(*current, start, unit);
    opt.sweep_until_stable(rng, max_sweeps);

    const auto& module = opt.modules();
    std::vector<std::uint32_t> dense(current->size(), UINT32_MAX);
    std::size_t count = 0;
    for (auto m : module)
      if (dense[m] == UINT32_MAX) dense[m] = static_cast<std::uint32_t>(count++);
    for (auto& x : node_to_level) x = dense[module[x]];
    if (count == current->size()) break;

    owned = aggregate(*current, opt, dense, count);
    current = &owned;
    start.resize(count);
    std::iota(start.begin(), start.end(), 0u);
  }
  return node_to_level;
}

double codelength_of(const Graph& g, const std::vector<std::uint32_t>& assignment) {
  return map_equation(g, Partition(assignment));
}

}  // namespace

DetectionResult detect_communities_infomap(const Graph& g, const InfomapOptions& options) {
  const std::size_t n = g.num_nodes();
  const std::size_t trials = std::max<std::size_t>(1, options.trials);
  if (g.num_edges() == 0) return {Partition::singletons(n), 0.0, 0};

  const Level base = node_level(g);
  const double unit = 1.0 / (2.0 * static_cast<double>(g.num_edges()));

  std::vector<Partition> partitions(trials);
  std::vector<double> lengths(trials);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long t = 0; t < static_cast<long long>(trials); ++t) {
    std::mt19937_64 rng(derive_seed(options.seed, static_cast<std::uint64_t>(t)));
    std::vector<std::uint32_t> assignment(n);
    std::iota(assignment.begin(), assignment.end(), 0u);
    double length = codelength_of(g, assignment);
    // Re-run from the node level with the current modules as the starting
    // point until a full pass no longer shortens the code.
    for (int round = 0; round < 50; ++round) {
      auto refined = optimize_from(base, assignment, unit, rng, options.max_sweeps);
      const double refined_length = codelength_of(g, refined);
      if (refined_length >= length - kMinImprovement) break;
      assignment = std::move(refined);
      length = refined_length;
    }
    partitions[static_cast<std::size_t>(t)] = Partition(assignment);
    lengths[static_cast<std::size_t>(t)] = map_equation(g, partitions[static_cast<std::size_t>(t)]);
  }

  std::size_t best = 0;
  for (std::size_t t = 1; t < trials; ++t) {
    const double diff = lengths[t] - lengths[best];
    const bool shorter = diff < -1e-12;
    const bool tied = std::abs(diff) <= 1e-12;
    if (shorter || (tied && std::lexicographical_compare(
                                partitions[t].assignment().begin(), partitions[t].assignment().end(),
                                partitions[best].assignment().begin(),
                                partitions[best].assignment().end())))
      best = t;
  }
  return {partitions[best], lengths[best], best};
}

Partition detect_communities_label_propagation(const Graph& g,
                                               const LabelPropagationOptions& options) {
  const std::size_t n = g.num_nodes();
  std::vector<std::uint32_t> label(n);
  std::iota(label.begin(), label.end(), 0u);
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::mt19937_64 rng(derive_seed(options.seed, 0));

  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::uint32_t> best;
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    std::shuffle(order.begin(), order.end(), rng);
    bool changed = false;
    for (NodeId u : order) {
      if (g.degree(u) == 0) continue;
      touched.clear();
      std::uint32_t top = 0;
      for (NodeId v : g.neighbors(u)) {
        if (count[label[v]]++ == 0) touched.push_back(label[v]);
        top = std::max(top, count[label[v]]);
      }
      if (count[label[u]] != top) {
        best.clear();
        for (auto l : touched)
          if (count[l] == top) best.push_back(l);
        std::sort(best.begin(), best.end());
        std::uniform_int_distribution<std::size_t> pick(0, best.size() - 1);
        label[u] = best[pick(rng)];
        changed = true;
      }
      for (auto l : touched) count[l] = 0;
    }
    if (!changed) break;
  }
  return Partition(label);
}

}  // namespace commcent
