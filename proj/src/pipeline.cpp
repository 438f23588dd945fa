#include "commcent/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "commcent/detection.hpp"
#include "commcent/error.hpp"
#include "commcent/format.hpp"
#include "commcent/heatmap.hpp"

namespace commcent {

namespace {

using ojson = nlohmann::ordered_json;

// Stream indices for fanning the run seed out to each randomized stage.
constexpr std::uint64_t kDetectorStream = 1;
constexpr std::uint64_t kTieStream = 2;
constexpr std::uint64_t kPathSampleStream = 3;

ojson optional_number(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson matrix_json(const ComparisonMatrix& m) {
  ojson j;
  j["statistic"] = statistic_id(m.statistic);
  if (m.statistic == Statistic::rbo) j["p"] = m.rbo_p;
  ojson rows = ojson::array(), cols = ojson::array();
  for (auto r : kClassicalMeasures) rows.push_back(measure_id(r));
  for (auto c : kCommunityMeasures) cols.push_back(measure_id(c));
  j["rows"] = rows;
  j["columns"] = cols;
  ojson values = ojson::array();
  for (const auto& row : m.values) {
    ojson jr = ojson::array();
    for (const auto& v : row) jr.push_back(optional_number(v));
    values.push_back(jr);
  }
  j["values"] = values;
  return j;
}

std::optional<double> column_mean(const ComparisonMatrix& m, std::size_t c, bool absolute) {
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < 5; ++r)
    if (m.values[r][c]) {
      sum += absolute ? std::abs(*m.values[r][c]) : *m.values[r][c];
      ++count;
    }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::string_view tie_policy_id(TiePolicy p) { return p == TiePolicy::node_id ? "node-id" : "random"; }

}  // namespace

std::string_view detector_id(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::infomap: return "infomap";
    case DetectorKind::label_propagation: return "label-prop";
    case DetectorKind::external: return "external";
  }
  return "infomap";
}

std::optional<DetectorKind> parse_detector(std::string_view id) {
  if (id == "infomap") return DetectorKind::infomap;
  if (id == "label-prop") return DetectorKind::label_propagation;
  if (id == "external") return DetectorKind::external;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  const double d = centrality.pagerank_damping;
  if (!(d >= 0.0 && d <= 1.0)) throw InvalidArgument("pagerank damping must lie in [0, 1]");
  if (centrality.katz_attenuation && *centrality.katz_attenuation < 0.0)
    throw InvalidArgument("katz attenuation must be non-negative");
  if (!(centrality.katz_fraction > 0.0 && centrality.katz_fraction < 1.0))
    throw InvalidArgument("katz fraction must lie in (0, 1)");
  if (!(centrality.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (!(compare.rbo_p > 0.0 && compare.rbo_p < 1.0))
    throw InvalidArgument("rbo persistence p must lie in (0, 1)");
  if (compare.ranking.tie_epsilon < 0.0) throw InvalidArgument("tie epsilon must be non-negative");
  if (sample_paths && *sample_paths == 0) throw InvalidArgument("sample-paths must be positive");
}

ojson RunConfig::to_json() const {
  ojson j;
  j["detector"] = detector_id(detector);
  j["seed"] = seed;
  j["trials"] = trials;
  if (centrality.katz_attenuation)
    j["katz_attenuation"] = *centrality.katz_attenuation;
  else
    j["katz_fraction_of_inverse_lambda_max"] = centrality.katz_fraction;
  j["pagerank_damping"] = centrality.pagerank_damping;
  j["tolerance"] = centrality.tolerance;
  j["max_iterations"] = centrality.max_iterations;
  j["rbo_p"] = compare.rbo_p;
  j["rbo_variant"] = compare.rbo_variant == RboVariant::extrapolated ? "extrapolated" : "truncated";
  j["tie_policy"] = tie_policy_id(compare.ranking.tie_policy);
  j["tie_epsilon"] = compare.ranking.tie_epsilon;
  j["cbm_weighting"] =
      cbm_weighting == MediatorWeighting::link_fraction ? "link-fraction" : "community-density";
  j["sample_paths"] = sample_paths ? ojson(*sample_paths) : ojson(nullptr);
  return j;
}

std::string RunConfig::hash() const { return hex64(fnv1a(to_json().dump())); }

Partition detect_partition(const Graph& g, const RunConfig& config,
                           const std::optional<std::filesystem::path>& partition_file,
                           double* codelength) {
  Partition p;
  if (partition_file) {
    p = read_partition(*partition_file, g, {config.format, true});
  } else if (config.detector == DetectorKind::external) {
    throw InvalidArgument("the external detector needs a partition file");
  } else if (config.detector == DetectorKind::label_propagation) {
    p = detect_communities_label_propagation(g, {derive_seed(config.seed, kDetectorStream), 1000});
  } else {
    InfomapOptions opts;
    opts.seed = derive_seed(config.seed, kDetectorStream);
    opts.trials = config.trials;
    p = detect_communities_infomap(g, opts).partition;
  }
  if (codelength) *codelength = map_equation(g, p);
  return p;
}

NetworkReport run_network(const RunConfig& config, const NetworkSpec& network) {
  config.validate();
  NetworkReport report;
  report.name = network.name;
  report.edges_path = network.edges.string();
  report.config_hash = config.hash();

  auto ingested = read_edge_list(network.edges, config.format);
  report.ingest = ingested.report;
  report.input_nodes = ingested.graph.num_nodes();
  report.input_edges = ingested.graph.num_edges();
  report.graph = largest_connected_component(ingested.graph).graph;
  const Graph& g = report.graph;
  if (g.num_nodes() < 2) throw DataError("largest connected component has fewer than two nodes");

  TopoOptions topo_opts;
  topo_opts.sample_sources = config.sample_paths;
  topo_opts.seed = derive_seed(config.seed, kPathSampleStream);
  report.topo = topo_stats(g, topo_opts);

  // Detection output is the synchronization point before the centralities.
  report.detector = network.partition ? "external" : std::string(detector_id(config.detector));
  report.partition = detect_partition(g, config, network.partition, &report.codelength);
  report.modularity = modularity(g, report.partition);
  report.mixing = mixing_parameter(g, report.partition);

  report.classical.resize(5);
  report.classical[0] = degree_centrality(g);
  report.classical[1] = betweenness_centrality(g);
  report.classical[2] = closeness_centrality(g);
  report.classical[3] = katz_centrality(g, config.centrality);
  report.classical[4] = pagerank_centrality(g, config.centrality);

  const CommunityInputs inputs(g, report.partition, report.classical[1]);
  report.community.resize(5);
  report.community[0] = bridging_centrality(inputs);
  report.community[1] = community_hub_bridge(inputs);
  report.community[2] = participation_coefficient(inputs);
  report.community[3] = community_based_mediator(inputs, config.cbm_weighting);
  report.community[4] = neighboring_communities(inputs);

  auto compare = config.compare;
  compare.ranking.seed = derive_seed(config.seed, kTieStream);
  std::tie(report.tau, report.rbo) = compare_measures(report.classical, report.community, compare);
  return report;
}

ojson report_json(const NetworkReport& report, const RunConfig& config) {
  ojson j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", "commcent"}, {"version", kToolVersion}};
  j["network"] = report.name;
  j["input"] = {{"edges_path", report.edges_path},
                {"data_lines", report.ingest.data_lines},
                {"nodes", report.input_nodes},
                {"edges", report.input_edges},
                {"self_loops_dropped", report.ingest.self_loops_dropped},
                {"duplicates_dropped", report.ingest.duplicates_dropped}};
  const auto& t = report.topo;
  j["topology"] = {{"scope", "largest_connected_component"},
                   {"n", t.n},
                   {"m", t.m},
                   {"avg_degree", t.avg_degree},
                   {"avg_shortest_path", t.avg_shortest_path},
                   {"avg_shortest_path_approximate", t.sampled_sources.has_value()},
                   {"density", t.density},
                   {"transitivity", t.transitivity},
                   {"assortativity", optional_number(t.assortativity)},
                   {"diameter", t.diameter},
                   {"sampled_sources", t.sampled_sources ? ojson(*t.sampled_sources) : ojson(nullptr)}};
  j["communities"] = {{"detector", report.detector},
                      {"count", report.partition.num_communities()},
                      {"modularity", report.modularity},
                      {"mixing_parameter", report.mixing},
                      {"codelength_bits", report.codelength},
                      {"fingerprint", report.partition.fingerprint()}};
  j["config"] = config.to_json();
  j["config_hash"] = report.config_hash;

  ojson measures = ojson::array();
  const auto add_measure = [&](const ScoreVector& s) {
    ojson meta = ojson::object();
    for (const auto& [k, v] : s.metadata) meta[k] = v;
    measures.push_back({{"id", measure_id(s.measure)}, {"symbol", measure_symbol(s.measure)},
                        {"metadata", meta}});
  };
  for (const auto& s : report.classical) add_measure(s);
  for (const auto& s : report.community) add_measure(s);
  j["measures"] = measures;
  j["matrices"] = {{"tau_b", matrix_json(report.tau)}, {"rbo", matrix_json(report.rbo)}};

  ojson profile = ojson::object();
  for (std::size_t c = 0; c < 5; ++c)
    profile[std::string(measure_id(kCommunityMeasures[c]))] = {
        {"mean_abs_tau_b", optional_number(column_mean(report.tau, c, true))},
        {"mean_rbo", optional_number(column_mean(report.rbo, c, false))}};
  j["community_measure_profile"] = profile;
  return j;
}

void write_network_artifacts(const NetworkReport& report, const RunConfig& config,
                             const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> files;
  if (config.emit_json) files.emplace_back("report.json", report_json(report, config).dump(2) + "\n");
  if (config.emit_csv) {
    std::ostringstream tau, rbo, scores, partition, labels;
    write_matrix_csv(tau, report.tau);
    write_matrix_csv(rbo, report.rbo);
    std::vector<ScoreVector> all = report.classical;
    all.insert(all.end(), report.community.begin(), report.community.end());
    write_scores_table_csv(scores, report.graph, all);
    save_partition(partition, report.graph, report.partition);
    write_label_map(labels, report.graph);
    files.emplace_back("tau_b.csv", tau.str());
    files.emplace_back("rbo.csv", rbo.str());
    files.emplace_back("scores.csv", scores.str());
    files.emplace_back("partition.txt", partition.str());
    files.emplace_back("label_map.csv", labels.str());
  }
  if (config.emit_svg) {
    files.emplace_back("tau_b.svg", heatmap_svg(report.tau, fmt::format("{}: Kendall tau-b", report.name)));
    files.emplace_back("rbo.svg", heatmap_svg(report.rbo, fmt::format("{}: RBO (p = {})", report.name,
                                                                     format_double(report.rbo.rbo_p))));
  }

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError(fmt::format("cannot create output directory '{}': {}", dir.string(), ec.message()));
  std::vector<std::filesystem::path> written;
  for (const auto& [name, content] : files) {
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
      for (const auto& w : written) std::filesystem::remove(w, ec);
      std::filesystem::remove(path, ec);
      throw DataError(fmt::format("failed writing '{}'", path.string()));
    }
    written.push_back(path);
  }
}

std::vector<NetworkSpec> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open manifest '{}'", path.string()));
  const auto base = path.parent_path();
  const auto resolve = [&](const std::string& p) {
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  std::vector<NetworkSpec> networks;
  EdgeListOptions format;
  format.delimiter.reset();
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    auto fields = split_fields(line, format, line_number);
    if (fields.empty()) continue;
    if (fields.size() < 2 || fields.size() > 3)
      throw DataError(fmt::format("{}:{}: expected 'name edges [partition]'", path.string(), line_number));
    NetworkSpec spec{fields[0], resolve(fields[1]), std::nullopt};
    if (fields.size() == 3) spec.partition = resolve(fields[2]);
    networks.push_back(std::move(spec));
  }
  if (networks.empty()) throw DataError(fmt::format("manifest '{}' lists no networks", path.string()));
  return networks;
}

ojson suite_summary(std::span<const NetworkReport> reports) {
  ojson summary;
  summary["schema_version"] = kReportSchemaVersion;
  ojson names = ojson::array();
  for (const auto& r : reports) names.push_back(r.name);
  summary["networks"] = names;

  ojson measures = ojson::object();
  std::vector<std::pair<double, std::string>> averages;
  for (std::size_t c = 0; c < 5; ++c) {
    const std::string id(measure_id(kCommunityMeasures[c]));
    ojson entry;
    for (const bool is_tau : {true, false}) {
      double lo = 0.0, hi = 0.0, sum = 0.0, abs_sum = 0.0;
      std::size_t count = 0;
      for (const auto& r : reports) {
        const auto& m = is_tau ? r.tau : r.rbo;
        for (std::size_t row = 0; row < 5; ++row) {
          if (!m.values[row][c]) continue;
          const double v = *m.values[row][c];
          lo = count == 0 ? v : std::min(lo, v);
          hi = count == 0 ? v : std::max(hi, v);
          sum += v;
          abs_sum += std::abs(v);
          ++count;
        }
      }
      ojson stat;
      stat["cells"] = count;
      stat["min"] = count ? ojson(lo) : ojson(nullptr);
      stat["mean"] = count ? ojson(sum / static_cast<double>(count)) : ojson(nullptr);
      stat["max"] = count ? ojson(hi) : ojson(nullptr);
      if (is_tau) stat["mean_abs"] = count ? ojson(abs_sum / static_cast<double>(count)) : ojson(nullptr);
      entry[is_tau ? "tau_b" : "rbo"] = stat;
    }

    // Average over networks of each network's mean |tau-b| for this measure.
    double total = 0.0;
    std::size_t defined = 0;
    ojson per_network = ojson::object();
    for (const auto& r : reports) {
      const auto v = column_mean(r.tau, c, true);
      per_network[r.name] = optional_number(v);
      if (v) {
        total += *v;
        ++defined;
      }
    }
    entry["mean_abs_tau_b_by_network"] = per_network;
    if (defined) averages.emplace_back(total / static_cast<double>(defined), id);
    measures[id] = entry;
  }
  summary["community_measures"] = measures;

  // Split at the widest gap between consecutive averages.
  std::sort(averages.begin(), averages.end());
  ojson low = ojson::array(), high = ojson::array();
  if (averages.size() >= 2) {
    std::size_t cut = 1;
    double widest = -1.0;
    for (std::size_t i = 1; i < averages.size(); ++i) {
      const double gap = averages[i].first - averages[i - 1].first;
      if (gap > widest) {
        widest = gap;
        cut = i;
      }
    }
    for (std::size_t i = 0; i < averages.size(); ++i)
      (i < cut ? low : high).push_back(averages[i].second);
  }
  summary["grouping_by_mean_abs_tau_b"] = {{"lower", low}, {"higher", high}};
  return summary;
}

SuiteResult run_suite(const RunConfig& config, std::span<const NetworkSpec> networks,
                      const std::optional<std::filesystem::path>& out_dir) {
  if (networks.empty()) throw InvalidArgument("suite manifest lists no networks");
  config.validate();
  const std::size_t count = networks.size();
  std::vector<std::optional<NetworkReport>> reports(count);
  std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    try {
      reports[idx] = run_network(config, networks[idx]);
      if (out_dir) write_network_artifacts(*reports[idx], config, *out_dir / networks[idx].name);
    } catch (const std::exception& e) {
      reports[idx].reset();
      errors[idx] = e.what();
    }
  }

  SuiteResult result;
  for (std::size_t i = 0; i < count; ++i) {
    if (reports[i])
      result.reports.push_back(std::move(*reports[i]));
    else
      result.failures.emplace_back(networks[i].name, errors[i]);
  }
  result.summary = suite_summary(result.reports);
  ojson failures = ojson::array();
  for (const auto& [name, error] : result.failures) failures.push_back({{"network", name}, {"error", error}});
  result.summary["failures"] = failures;

  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    std::ofstream json(*out_dir / "summary.json");
    json << result.summary.dump(2) << '\n';
    std::ofstream csv(*out_dir / "summary.csv");
    write_summary_csv(csv, result.summary);
    if (!json || !csv) throw DataError("failed writing suite summary");
  }
  return result;
}

void write_summary_csv(std::ostream& out, const ojson& summary) {
  out << "measure,tau_b_min,tau_b_mean,tau_b_max,tau_b_mean_abs,rbo_min,rbo_mean,rbo_max\n";
  const auto cell = [](const ojson& v) { return v.is_null() ? std::string() : format_double(v.get<double>()); };
  for (const auto& [id, entry] : summary.at("community_measures").items()) {
    const auto& t = entry.at("tau_b");
    const auto& r = entry.at("rbo");
    out << id << ',' << cell(t.at("min")) << ',' << cell(t.at("mean")) << ',' << cell(t.at("max")) << ','
        << cell(t.at("mean_abs")) << ',' << cell(r.at("min")) << ',' << cell(r.at("mean")) << ','
        << cell(r.at("max")) << '\n';
  }
}

}  // namespace commcent
