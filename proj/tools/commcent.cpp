// commcent: classical vs community-aware centrality analysis.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "commcent/centrality.hpp"
#include "commcent/community_centrality.hpp"
#include "commcent/detection.hpp"
#include "commcent/error.hpp"
#include "commcent/format.hpp"
#include "commcent/graph.hpp"
#include "commcent/partition.hpp"
#include "commcent/pipeline.hpp"

namespace {

using namespace commcent;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumeric = 3;

struct Options {
  RunConfig config;
  std::string detector = "infomap";
  std::string tie_policy = "node-id";
  std::string rbo_variant = "extrapolated";
  std::string cbm_weighting = "link-fraction";
  std::string delimiter;
  std::optional<double> katz_s;
  std::size_t sample_paths = 0;
  bool no_csv = false, no_json = false, no_svg = false;

  void finalize() {
    auto& c = config;
    c.detector = *parse_detector(detector);
    c.compare.ranking.tie_policy = tie_policy == "random" ? TiePolicy::random : TiePolicy::node_id;
    c.compare.rbo_variant = rbo_variant == "truncated" ? RboVariant::truncated : RboVariant::extrapolated;
    c.cbm_weighting = cbm_weighting == "community-density" ? MediatorWeighting::community_density
                                                            : MediatorWeighting::link_fraction;
    c.centrality.katz_attenuation = katz_s;
    if (sample_paths > 0) c.sample_paths = sample_paths;
    if (!delimiter.empty()) {
      if (delimiter.size() != 1) throw InvalidArgument("delimiter must be a single character");
      c.format.delimiter = delimiter[0] == 't' ? '\t' : delimiter[0];
    }
    c.emit_csv = !no_csv;
    c.emit_json = !no_json;
    c.emit_svg = !no_svg;
    c.validate();
  }
};

std::filesystem::path default_out_dir() {
  if (const char* env = std::getenv("COMMCENT_OUT_DIR"); env && *env) return env;
  return "commcent-out";
}

void add_format_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--delimiter", o.delimiter,
                  "Single field delimiter ('t' for tab); default splits on whitespace and commas");
}

void add_detect_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.config.seed, "Run seed")->capture_default_str();
  cmd->add_option("--trials", o.config.trials, "Map-equation detector trials")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--detector", o.detector, "infomap | label-prop | external")
      ->capture_default_str()
      ->check(CLI::IsMember({"infomap", "label-prop", "external"}));
}

void add_centrality_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--pagerank-d", o.config.centrality.pagerank_damping, "PageRank damping")
      ->capture_default_str();
  cmd->add_option("--katz-s", o.katz_s, "Katz attenuation (default: fraction of 1/lambda_max)");
  cmd->add_option("--katz-fraction", o.config.centrality.katz_fraction,
                  "Katz attenuation as a fraction of 1/lambda_max")
      ->capture_default_str();
  cmd->add_option("--tolerance", o.config.centrality.tolerance, "Iteration tolerance")
      ->capture_default_str();
  cmd->add_option("--max-iterations", o.config.centrality.max_iterations, "Iteration cap")
      ->capture_default_str();
  cmd->add_option("--cbm-weighting", o.cbm_weighting, "link-fraction | community-density")
      ->capture_default_str()
      ->check(CLI::IsMember({"link-fraction", "community-density"}));
}

void add_compare_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--rbo-p", o.config.compare.rbo_p, "RBO persistence")->capture_default_str();
  cmd->add_option("--rbo-variant", o.rbo_variant, "extrapolated | truncated")
      ->capture_default_str()
      ->check(CLI::IsMember({"extrapolated", "truncated"}));
  cmd->add_option("--tie-policy", o.tie_policy, "Order of tied nodes for RBO: node-id | random")
      ->capture_default_str()
      ->check(CLI::IsMember({"node-id", "random"}));
  cmd->add_option("--tie-epsilon", o.config.compare.ranking.tie_epsilon,
                  "Relative score difference treated as a tie in rankings")
      ->capture_default_str();
  cmd->add_option("--sample-paths", o.sample_paths,
                  "Estimate <d> from K random BFS sources (approximate)");
  cmd->add_flag("--no-csv", o.no_csv, "Skip CSV artifacts");
  cmd->add_flag("--no-json", o.no_json, "Skip the JSON report");
  cmd->add_flag("--no-svg", o.no_svg, "Skip SVG heatmaps");
}

Graph load_lcc(const std::string& path, const Options& o, bool verbose = true) {
  auto ingested = read_edge_list(path, o.config.format);
  const auto& r = ingested.report;
  auto lcc = largest_connected_component(ingested.graph);
  if (verbose) {
    std::cerr << fmt::format("read {} nodes, {} edges ({} self-loops, {} duplicates dropped)\n",
                             ingested.graph.num_nodes(), ingested.graph.num_edges(),
                             r.self_loops_dropped, r.duplicates_dropped);
    if (lcc.graph.num_nodes() != ingested.graph.num_nodes())
      std::cerr << fmt::format("using largest connected component: {} nodes, {} edges\n",
                               lcc.graph.num_nodes(), lcc.graph.num_edges());
  }
  return std::move(lcc.graph);
}

int cmd_stats(const std::string& edges, const Options& o, bool as_json) {
  const Graph g = load_lcc(edges, o);
  TopoOptions opts;
  opts.sample_sources = o.config.sample_paths;
  opts.seed = derive_seed(o.config.seed, 3);
  const auto s = topo_stats(g, opts);
  if (as_json) {
    nlohmann::ordered_json j{{"n", s.n},
                             {"m", s.m},
                             {"avg_degree", s.avg_degree},
                             {"avg_shortest_path", s.avg_shortest_path},
                             {"avg_shortest_path_approximate", s.sampled_sources.has_value()},
                             {"density", s.density},
                             {"transitivity", s.transitivity},
                             {"assortativity", s.assortativity ? nlohmann::ordered_json(*s.assortativity)
                                                               : nlohmann::ordered_json(nullptr)},
                             {"diameter", s.diameter}};
    std::cout << j.dump(2) << '\n';
    return 0;
  }
  std::cout << fmt::format("N\t{}\nE\t{}\n<k>\t{:.4f}\n<d>\t{:.4f}{}\ndensity\t{:.6f}\n"
                           "transitivity\t{:.4f}\nassortativity\t{}\ndiameter\t{}{}\n",
                           s.n, s.m, s.avg_degree, s.avg_shortest_path,
                           s.sampled_sources ? fmt::format(" (approximate, {} sources)", *s.sampled_sources) : "",
                           s.density, s.transitivity,
                           s.assortativity ? fmt::format("{:.4f}", *s.assortativity) : "undefined",
                           s.diameter, s.sampled_sources ? " (lower bound)" : "");
  return 0;
}

int cmd_detect(const std::string& edges, const Options& o, const std::string& out,
               const std::optional<std::string>& partition) {
  const Graph g = load_lcc(edges, o);
  double codelength = 0.0;
  std::optional<std::filesystem::path> file;
  if (partition) file = *partition;
  const Partition p = detect_partition(g, o.config, file, &codelength);
  std::cerr << fmt::format("{} communities, codelength {:.6f} bits, Q {:.4f}, mu {:.4f}\n",
                           p.num_communities(), codelength, modularity(g, p), mixing_parameter(g, p));
  if (out.empty() || out == "-") {
    save_partition(std::cout, g, p);
  } else {
    std::ofstream f(out);
    save_partition(f, g, p);
    if (!f) throw DataError(fmt::format("failed writing '{}'", out));
  }
  return 0;
}

int cmd_centrality(const std::string& edges, const Options& o, const std::optional<std::string>& partition,
                   const std::string& measure, const std::string& out_dir) {
  const Graph g = load_lcc(edges, o);
  std::vector<Measure> wanted;
  if (measure == "all") {
    wanted.assign(kClassicalMeasures.begin(), kClassicalMeasures.end());
    wanted.insert(wanted.end(), kCommunityMeasures.begin(), kCommunityMeasures.end());
  } else if (auto m = parse_measure(measure)) {
    wanted.push_back(*m);
  } else {
    throw InvalidArgument(fmt::format("unknown measure '{}'", measure));
  }

  std::map<Measure, ScoreVector> cache;
  const auto classical = [&](Measure m) -> const ScoreVector& {
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    ScoreVector s;
    switch (m) {
      case Measure::degree: s = degree_centrality(g); break;
      case Measure::betweenness: s = betweenness_centrality(g); break;
      case Measure::closeness: s = closeness_centrality(g); break;
      case Measure::katz: s = katz_centrality(g, o.config.centrality); break;
      default: s = pagerank_centrality(g, o.config.centrality); break;
    }
    return cache.emplace(m, std::move(s)).first->second;
  };

  std::optional<Partition> p;
  std::optional<CommunityInputs> inputs;
  std::vector<ScoreVector> results;
  for (Measure m : wanted) {
    if (std::find(kClassicalMeasures.begin(), kClassicalMeasures.end(), m) != kClassicalMeasures.end()) {
      results.push_back(classical(m));
      continue;
    }
    if (!inputs) {
      std::optional<std::filesystem::path> file;
      if (partition) file = *partition;
      p = detect_partition(g, o.config, file);
      inputs.emplace(g, *p, classical(Measure::betweenness));
    }
    switch (m) {
      case Measure::bridging: results.push_back(bridging_centrality(*inputs)); break;
      case Measure::community_hub_bridge: results.push_back(community_hub_bridge(*inputs)); break;
      case Measure::participation_coefficient: results.push_back(participation_coefficient(*inputs)); break;
      case Measure::community_based_mediator:
        results.push_back(community_based_mediator(*inputs, o.config.cbm_weighting));
        break;
      default: results.push_back(neighboring_communities(*inputs)); break;
    }
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    for (const auto& s : results) {
      const auto path = std::filesystem::path(out_dir) / fmt::format("{}.csv", measure_id(s.measure));
      std::ofstream f(path);
      write_scores_csv(f, g, s);
      if (!f) throw DataError(fmt::format("failed writing '{}'", path.string()));
    }
  } else if (results.size() == 1) {
    write_scores_csv(std::cout, g, results.front());
  } else {
    write_scores_table_csv(std::cout, g, results);
  }
  return 0;
}

int cmd_compare(const std::string& edges, const Options& o, const std::optional<std::string>& partition,
                const std::string& out_dir) {
  NetworkSpec spec{std::filesystem::path(edges).stem().string(), edges, std::nullopt};
  if (partition) spec.partition = *partition;
  const auto report = run_network(o.config, spec);
  const std::filesystem::path dir = out_dir.empty() ? default_out_dir() : std::filesystem::path(out_dir);
  write_network_artifacts(report, o.config, dir);
  std::cerr << fmt::format("{}: N={} E={} communities={} Q={:.4f} mu={:.4f}; artifacts in {}\n",
                           report.name, report.topo.n, report.topo.m, report.partition.num_communities(),
                           report.modularity, report.mixing, dir.string());
  return 0;
}

int cmd_suite(const std::string& manifest, const Options& o, const std::string& out_dir) {
  const auto networks = read_manifest(manifest);
  const std::filesystem::path dir = out_dir.empty() ? default_out_dir() : std::filesystem::path(out_dir);
  const auto result = run_suite(o.config, networks, dir);
  for (const auto& r : result.reports)
    std::cerr << fmt::format("ok      {} (N={}, E={})\n", r.name, r.topo.n, r.topo.m);
  for (const auto& [name, error] : result.failures) std::cerr << fmt::format("FAILED  {}: {}\n", name, error);
  std::cerr << fmt::format("summary written to {}\n", (dir / "summary.json").string());
  return result.failures.empty() ? 0 : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and community-aware centrality analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Options o;
  std::string edges, manifest, out, measure = "all";
  std::optional<std::string> partition;
  bool as_json = false;

  auto* stats = app.add_subcommand("stats", "Topological profile of the largest connected component");
  stats->add_option("edges", edges, "Edge-list file")->required();
  stats->add_option("--sample-paths", o.sample_paths, "Estimate <d> from K random BFS sources");
  stats->add_option("--seed", o.config.seed, "Seed for path sampling");
  stats->add_flag("--json", as_json, "Print JSON");
  add_format_options(stats, o);

  auto* detect = app.add_subcommand("detect", "Detect communities and write a partition file");
  detect->add_option("edges", edges, "Edge-list file")->required();
  detect->add_option("--out", out, "Partition output file (default: stdout)");
  detect->add_option("--partition", partition, "Re-score an existing partition instead");
  add_detect_options(detect, o);
  add_format_options(detect, o);

  auto* centrality = app.add_subcommand("centrality", "Score nodes by one or all measures");
  centrality->add_option("edges", edges, "Edge-list file")->required();
  centrality->add_option("--partition", partition, "Partition file for community-aware measures");
  centrality->add_option("--measure", measure, "Measure id or 'all'")->capture_default_str();
  centrality->add_option("--out", out, "Directory for one CSV per measure (default: stdout)");
  add_detect_options(centrality, o);
  add_centrality_options(centrality, o);
  add_format_options(centrality, o);

  auto* compare = app.add_subcommand("compare", "Full comparison for one network");
  compare->add_option("edges", edges, "Edge-list file")->required();
  compare->add_option("--partition", partition, "Partition file (skips detection)");
  compare->add_option("--out", out, "Output directory (default: $COMMCENT_OUT_DIR or ./commcent-out)");
  add_detect_options(compare, o);
  add_centrality_options(compare, o);
  add_compare_options(compare, o);
  add_format_options(compare, o);

  auto* suite = app.add_subcommand("suite", "Run every network of a manifest and summarize");
  suite->add_option("manifest", manifest, "Manifest file: name edges [partition] per line")->required();
  suite->add_option("--out", out, "Output directory (default: $COMMCENT_OUT_DIR or ./commcent-out)");
  add_detect_options(suite, o);
  add_centrality_options(suite, o);
  add_compare_options(suite, o);
  add_format_options(suite, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    o.finalize();
    if (*stats) return cmd_stats(edges, o, as_json);
    if (*detect) return cmd_detect(edges, o, out, partition);
    if (*centrality) return cmd_centrality(edges, o, partition, measure, out);
    if (*compare) return cmd_compare(edges, o, partition, out);
    if (*suite) return cmd_suite(manifest, o, out);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
