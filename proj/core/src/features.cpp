#include "netdist/features.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "netdist/community.hpp"
#include "netdist/error.hpp"

namespace netdist {

void PercentileConfig::validate() const {
  if (intervals < 2 || intervals % 2 != 0) {
    throw Error(ErrorKind::kArgument,
                "percentile interval count must be even and >= 2, got " + std::to_string(intervals));
  }
  if (!(width_coefficient > 0.0) || !std::isfinite(width_coefficient)) {
    throw Error(ErrorKind::kArgument, "percentile width coefficient must be positive");
  }
}

std::vector<std::string> feature_names(const PercentileConfig& cfg) {
  cfg.validate();
  std::vector<std::string> names{"avg_shortest_path"};
  for (int i = 1; i <= cfg.intervals; ++i) names.push_back("degdistp" + std::to_string(i));
  for (std::size_t i = 5; i < kFeatureNames.size(); ++i) names.emplace_back(kFeatureNames[i]);
  return names;
}

DegreeStats degree_stats(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n == 0) throw Error(ErrorKind::kEmptyInput, "degree statistics of an empty graph");
  DegreeStats stats;
  stats.node_count = n;
  for (NodeId v = 0; v < n; ++v) ++stats.histogram[g.degree(v)];
  stats.mu = 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n);
  double sq = 0.0;
  for (const auto& [degree, count] : stats.histogram) {
    const double dev = static_cast<double>(degree) - stats.mu;
    sq += static_cast<double>(count) * dev * dev;
  }
  stats.sigma = std::sqrt(sq / static_cast<double>(n));
  return stats;
}

std::vector<double> interval_points(const DegreeStats& stats, const PercentileConfig& cfg) {
  cfg.validate();
  const int k = cfg.intervals;
  std::vector<double> points(static_cast<std::size_t>(k) + 1);
  for (int i = 1; i <= k + 1; ++i) {
    points[static_cast<std::size_t>(i - 1)] =
        stats.mu - (k / 2 - i + 1) * cfg.width_coefficient * stats.sigma;
  }
  return points;
}

std::vector<double> degree_distribution_percentiles(const DegreeStats& stats,
                                                    const PercentileConfig& cfg) {
  const std::vector<double> points = interval_points(stats, cfg);
  std::vector<double> result(static_cast<std::size_t>(cfg.intervals), 0.0);
  if (stats.sigma == 0.0 || stats.node_count == 0) return result;
  for (std::size_t i = 0; i < result.size(); ++i) {
    std::size_t inside = 0;
    for (const auto& [degree, count] : stats.histogram) {
      const double d = static_cast<double>(degree);
      if (d > points[i] && d < points[i + 1]) inside += count;
    }
    result[i] = static_cast<double>(inside) / static_cast<double>(stats.node_count);
  }
  return result;
}

double density(const Graph& g) {
  const std::size_t n = g.node_count();
  if (n < 2) throw Error(ErrorKind::kDegenerateInput, "density needs at least two nodes");
  return 2.0 * static_cast<double>(g.edge_count()) /
         (static_cast<double>(n) * static_cast<double>(n - 1));
}

double average_degree(const Graph& g) {
  if (g.node_count() == 0) throw Error(ErrorKind::kEmptyInput, "average degree of an empty graph");
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

TriangleCounts count_triangles(const Graph& g) {
  const std::size_t n = g.node_count();
  TriangleCounts counts;
  counts.per_node.assign(n, 0);

  // Orient every edge from lower to higher (degree, id) rank.
  auto before = [&g](NodeId a, NodeId b) {
    return g.degree(a) < g.degree(b) || (g.degree(a) == g.degree(b) && a < b);
  };
  std::vector<std::size_t> offsets(n + 1, 0);
  for (NodeId v = 0; v < n; ++v) {
    for (NodeId w : g.neighbors(v)) offsets[v + 1] += before(v, w) ? 1 : 0;
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<NodeId> forward(offsets.back());
  for (NodeId v = 0; v < n; ++v) {
    std::size_t pos = offsets[v];
    for (NodeId w : g.neighbors(v)) {
      if (before(v, w)) forward[pos++] = w;
    }
  }

  std::vector<NodeId> mark(n, kUnreachable);
  for (NodeId u = 0; u < n; ++u) {
    for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) mark[forward[e]] = u;
    for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
      const NodeId v = forward[e];
      for (std::size_t f = offsets[v]; f < offsets[v + 1]; ++f) {
        const NodeId w = forward[f];
        if (mark[w] == u) {
          ++counts.total;
          ++counts.per_node[u];
          ++counts.per_node[v];
          ++counts.per_node[w];
        }
      }
    }
  }
  return counts;
}

namespace {

double transitivity_from(const Graph& g, const TriangleCounts& t) {
  std::uint64_t triples = 0;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::uint64_t d = g.degree(v);
    triples += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  if (triples == 0) return 0.0;
  return 3.0 * static_cast<double>(t.total) / static_cast<double>(triples);
}

double clustering_from(const Graph& g, const TriangleCounts& t) {
  const std::size_t n = g.node_count();
  if (n == 0) return 0.0;
  double sum = 0.0;
  for (NodeId v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(v);
    if (d < 2) continue;
    sum += 2.0 * static_cast<double>(t.per_node[v]) / static_cast<double>(d * (d - 1));
  }
  return sum / static_cast<double>(n);
}

struct PathTally {
  std::uint64_t distance_sum = 0;
  std::uint64_t pairs = 0;
};

PathTally bfs_tally(const Graph& g, std::span<const NodeId> sources) {
  PathTally tally;
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> queue;
  queue.reserve(g.node_count());
  for (NodeId s : sources) {
    queue.clear();
    queue.push_back(s);
    dist[s] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const NodeId v = queue[head];
      const std::uint32_t next = dist[v] + 1;
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == kUnreachable) {
          dist[w] = next;
          tally.distance_sum += next;
          queue.push_back(w);
        }
      }
    }
    tally.pairs += queue.size() - 1;
    for (NodeId v : queue) dist[v] = kUnreachable;
  }
  return tally;
}

}  // namespace

double transitivity(const Graph& g) { return transitivity_from(g, count_triangles(g)); }

double average_clustering(const Graph& g) { return clustering_from(g, count_triangles(g)); }

double average_shortest_path(const Graph& g, const ExtractOptions& options) {
  if (g.edge_count() == 0) {
    throw Error(ErrorKind::kDegenerateInput, "average shortest path needs at least one edge");
  }
  if (options.sample_sources == 0) {
    throw Error(ErrorKind::kArgument, "sample_sources must be positive");
  }
  const std::size_t n = g.node_count();
  std::vector<NodeId> sources(n);
  std::iota(sources.begin(), sources.end(), 0U);
  if (n > options.sample_sources) {
    std::vector<NodeId> chosen;
    chosen.reserve(options.sample_sources);
    std::mt19937_64 rng(options.seed);
    std::sample(sources.begin(), sources.end(), std::back_inserter(chosen),
                static_cast<std::ptrdiff_t>(options.sample_sources), rng);
    sources = std::move(chosen);
  }

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp<unsigned>(workers, 1U, static_cast<unsigned>(sources.size()));
  std::vector<PathTally> partial(workers);
  if (workers == 1) {
    partial[0] = bfs_tally(g, sources);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (sources.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(sources.size(), w * chunk);
      const std::size_t hi = std::min(sources.size(), lo + chunk);
      pool.emplace_back([&, w, lo, hi] {
        partial[w] = bfs_tally(g, std::span<const NodeId>(sources).subspan(lo, hi - lo));
      });
    }
    for (auto& t : pool) t.join();
  }
  // Integer totals make the result independent of worker count.
  PathTally total;
  for (const auto& p : partial) {
    total.distance_sum += p.distance_sum;
    total.pairs += p.pairs;
  }
  if (total.pairs == 0) {
    throw Error(ErrorKind::kDegenerateInput, "no reachable node pairs among sampled sources");
  }
  return static_cast<double>(total.distance_sum) / static_cast<double>(total.pairs);
}

double modularity_feature(const Graph& g, std::uint64_t seed) {
  if (g.edge_count() == 0) {
    throw Error(ErrorKind::kDegenerateInput, "modularity needs at least one edge");
  }
  const Partition partition = louvain_partition(g, seed);
  return modularity(g, partition.community);
}

FeatureVector extract_features(const Graph& g, std::string graph_id,
                               std::optional<std::string> category, const PercentileConfig& cfg,
                               const ExtractOptions& options) {
  FeatureVector fv;
  fv.graph_id = std::move(graph_id);
  fv.category = std::move(category);
  try {
    cfg.validate();
    if (g.edge_count() == 0) {
      throw Error(ErrorKind::kDegenerateInput, "graph has no edges");
    }
    const DegreeStats stats = degree_stats(g);
    const std::vector<double> percentiles = degree_distribution_percentiles(stats, cfg);
    const TriangleCounts triangles = count_triangles(g);

    fv.values.reserve(3 + percentiles.size() + 3 + 3);
    fv.values.push_back(average_shortest_path(g, options));
    fv.values.insert(fv.values.end(), percentiles.begin(), percentiles.end());
    fv.values.push_back(density(g));
    fv.values.push_back(average_degree(g));
    fv.values.push_back(transitivity_from(g, triangles));
    fv.values.push_back(clustering_from(g, triangles));
    fv.values.push_back(modularity_feature(g, options.seed));
  } catch (const Error& e) {
    throw e.with_context("graph '" + fv.graph_id + "'");
  }
  return fv;
}

}  // namespace netdist
