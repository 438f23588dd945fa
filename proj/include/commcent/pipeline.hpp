#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "commcent/centrality.hpp"
#include "commcent/community_centrality.hpp"
#include "commcent/graph.hpp"
#include "commcent/partition.hpp"
#include "commcent/ranking.hpp"

namespace commcent {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

enum class DetectorKind { infomap, label_propagation, external };

std::string_view detector_id(DetectorKind kind);
std::optional<DetectorKind> parse_detector(std::string_view id);

struct RunConfig {
  DetectorKind detector = DetectorKind::infomap;
  std::uint64_t seed = 1;
  std::size_t trials = 10;
  CentralityParams centrality;
  CompareOptions compare;
  MediatorWeighting cbm_weighting = MediatorWeighting::link_fraction;
  std::optional<std::size_t> sample_paths;
  EdgeListOptions format;

  bool emit_csv = true;
  bool emit_json = true;
  bool emit_svg = true;

  /// Throws InvalidArgument when a parameter is out of range.
  void validate() const;
  /// Every setting that can change a result; output locations are excluded.
  nlohmann::ordered_json to_json() const;
  std::string hash() const;
};

struct NetworkSpec {
  std::string name;
  std::filesystem::path edges;
  std::optional<std::filesystem::path> partition;
};

struct NetworkReport {
  std::string name;
  std::string edges_path;
  IngestReport ingest;
  std::size_t input_nodes = 0;
  std::size_t input_edges = 0;

  Graph graph;  // largest connected component; every vector below indexes it
  TopoStats topo;

  std::string detector;
  Partition partition;
  double modularity = 0.0;
  double mixing = 0.0;
  double codelength = 0.0;

  std::vector<ScoreVector> classical;  // kClassicalMeasures order
  std::vector<ScoreVector> community;  // kCommunityMeasures order
  ComparisonMatrix tau;
  ComparisonMatrix rbo;

  std::string config_hash;
};

/// Community partition for `g` under the config's detector and seed.
/// External partitions come from `partition_file`.
Partition detect_partition(const Graph& g, const RunConfig& config,
                           const std::optional<std::filesystem::path>& partition_file,
                           double* codelength = nullptr);

/// Ingest, take the LCC, detect (or load) communities, profile the topology,
/// compute all ten measures and both comparison matrices.
NetworkReport run_network(const RunConfig& config, const NetworkSpec& network);

nlohmann::ordered_json report_json(const NetworkReport& report, const RunConfig& config);

/// Writes the enabled artifacts into `dir`. Files already written are removed
/// again if a later write fails.
void write_network_artifacts(const NetworkReport& report, const RunConfig& config,
                             const std::filesystem::path& dir);

/// One network per line: `name edges_path [partition_path]`; relative paths
/// resolve against the manifest's directory. Throws DataError when empty.
std::vector<NetworkSpec> read_manifest(const std::filesystem::path& path);

struct SuiteResult {
  std::vector<NetworkReport> reports;
  std::vector<std::pair<std::string, std::string>> failures;  // network, error
  nlohmann::ordered_json summary;
};

/// Per-measure min / mean / max of tau-b and RBO across the reports, each
/// network's mean |tau-b| profile, and a two-way split of the community-aware
/// measures at the widest gap in their average mean |tau-b|.
nlohmann::ordered_json suite_summary(std::span<const NetworkReport> reports);

/// Runs every network; a failing network is recorded and the rest continue.
/// With `out_dir`, artifacts go to out_dir/<name>/ plus summary files.
SuiteResult run_suite(const RunConfig& config, std::span<const NetworkSpec> networks,
                      const std::optional<std::filesystem::path>& out_dir = std::nullopt);

void write_summary_csv(std::ostream& out, const nlohmann::ordered_json& summary);

}  // namespace commcent
