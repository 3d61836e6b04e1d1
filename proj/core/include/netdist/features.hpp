#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netdist/graph.hpp"

namespace netdist {

inline constexpr std::size_t kFeatureCount = 10;

/// Column order of every descriptor, CSV file and model in the toolkit.
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "avg_shortest_path", "degdistp1",  "degdistp2",    "degdistp3",      "degdistp4",
    "density",           "avg_degree", "transitivity", "avg_clustering", "modularity",
};

struct FeatureVector {
  std::string graph_id;
  std::optional<std::string> category;
  /// kFeatureCount values in kFeatureNames order. Synthetic experiments may
  /// append extra columns; everything downstream works off values.size().
  std::vector<double> values;

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

struct DegreeStats {
  std::size_t node_count = 0;
  double mu = 0.0;
  /// Population standard deviation.
  double sigma = 0.0;
  std::map<std::size_t, std::size_t> histogram;
};

/// Interval layout for the degree-distribution percentiles: `intervals`
/// consecutive bins of width width_coefficient * sigma centred on the mean.
struct PercentileConfig {
  int intervals = 4;
  double width_coefficient = 0.3;

  /// Throws kArgument unless intervals is even and >= 2 and width > 0.
  void validate() const;
};

struct ExtractOptions {
  /// Exact all-pairs path lengths when node_count <= sample_sources.
  std::size_t sample_sources = 1000;
  std::uint64_t seed = 0;
  /// Worker threads for sampled BFS; 0 picks hardware concurrency.
  unsigned threads = 0;
};

/// Column names for cfg; equals kFeatureNames for the default config.
std::vector<std::string> feature_names(const PercentileConfig& cfg = {});

DegreeStats degree_stats(const Graph& g);

/// The K+1 interval endpoints mu - (K/2 - i + 1) * p * sigma, i = 1..K+1.
std::vector<double> interval_points(const DegreeStats& stats, const PercentileConfig& cfg);

/// Fraction of nodes whose degree lies strictly inside each interval.
std::vector<double> degree_distribution_percentiles(const DegreeStats& stats,
                                                    const PercentileConfig& cfg);

double density(const Graph& g);
double average_degree(const Graph& g);

struct TriangleCounts {
  std::uint64_t total = 0;
  std::vector<std::uint64_t> per_node;
};
TriangleCounts count_triangles(const Graph& g);

double transitivity(const Graph& g);
double average_clustering(const Graph& g);

/// Mean BFS distance over reachable ordered pairs, exact or source-sampled.
double average_shortest_path(const Graph& g, const ExtractOptions& options = {});

/// Louvain partition scored with Newman modularity.
double modularity_feature(const Graph& g, std::uint64_t seed);

FeatureVector extract_features(const Graph& g, std::string graph_id,
                               std::optional<std::string> category,
                               const PercentileConfig& cfg = {},
                               const ExtractOptions& options = {});

}  // namespace netdist
