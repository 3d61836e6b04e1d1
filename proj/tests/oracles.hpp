#pragma once

// Brute-force reference implementations. None of these call into the library
// code they check; they share only the Graph container.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "netdist/graph.hpp"

namespace netdist::oracle {

using AdjMatrix = std::vector<std::vector<int>>;

inline AdjMatrix adjacency_matrix(const Graph& g) {
  const std::size_t n = g.node_count();
  AdjMatrix a(n, std::vector<int>(n, 0));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) a[u][v] = 1;
  }
  return a;
}

inline constexpr long kInf = std::numeric_limits<long>::max() / 4;

inline std::vector<std::vector<long>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<long>> d(n, std::vector<long>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) d[u][v] = 1;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
      }
    }
  }
  return d;
}

/// Mean over reachable ordered pairs i != j.
inline double mean_path_length(const Graph& g) {
  const auto d = floyd_warshall(g);
  long sum = 0;
  long pairs = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (i != j && d[i][j] < kInf) {
        sum += d[i][j];
        ++pairs;
      }
    }
  }
  return static_cast<double>(sum) / static_cast<double>(pairs);
}

/// Per-node triangle counts by scanning every vertex triple.
inline std::vector<std::uint64_t> triangles_per_node(const Graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = a.size();
  std::vector<std::uint64_t> t(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!a[i][j]) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (a[i][k] && a[j][k]) {
          ++t[i];
          ++t[j];
          ++t[k];
        }
      }
    }
  }
  return t;
}

inline double transitivity(const Graph& g) {
  const auto t = triangles_per_node(g);
  const auto a = adjacency_matrix(g);
  std::uint64_t triangles3 = 0;
  for (auto c : t) triangles3 += c;  // each triangle appears at three nodes
  std::uint64_t triples = 0;
  for (std::size_t v = 0; v < a.size(); ++v) {
    std::uint64_t d = 0;
    for (int x : a[v]) d += static_cast<std::uint64_t>(x);
    if (d >= 2) triples += d * (d - 1) / 2;
  }
  if (triples == 0) return 0.0;
  return 3.0 * static_cast<double>(triangles3 / 3) / static_cast<double>(triples);
}

inline double average_clustering(const Graph& g) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = a.size();
  double sum = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::size_t> nb;
    for (std::size_t u = 0; u < n; ++u) {
      if (a[v][u]) nb.push_back(u);
    }
    const std::uint64_t d = nb.size();
    if (d < 2) continue;
    std::uint64_t closed = 0;
    for (std::size_t x = 0; x < nb.size(); ++x) {
      for (std::size_t y = x + 1; y < nb.size(); ++y) closed += a[nb[x]][nb[y]];
    }
    sum += 2.0 * static_cast<double>(closed) / static_cast<double>(d * (d - 1));
  }
  return sum / static_cast<double>(n);
}

/// Degree mean, population sigma and interval fractions, looping over nodes.
inline std::vector<double> degree_percentiles(const Graph& g, int intervals, double width) {
  const std::size_t n = g.node_count();
  std::vector<double> deg(n);
  for (NodeId v = 0; v < n; ++v) deg[v] = static_cast<double>(g.neighbors(v).size());
  double mu = 0.0;
  for (double d : deg) mu += d;
  mu /= static_cast<double>(n);
  double var = 0.0;
  for (double d : deg) var += (d - mu) * (d - mu);
  const double sigma = std::sqrt(var / static_cast<double>(n));
  std::vector<double> out(static_cast<std::size_t>(intervals), 0.0);
  if (sigma == 0.0) return out;
  for (int i = 1; i <= intervals; ++i) {
    const double lo = mu - (intervals / 2.0 - i + 1) * width * sigma;
    const double hi = mu - (intervals / 2.0 - (i + 1) + 1) * width * sigma;
    std::size_t inside = 0;
    for (double d : deg) {
      if (d > lo && d < hi) ++inside;
    }
    out[static_cast<std::size_t>(i - 1)] = static_cast<double>(inside) / static_cast<double>(n);
  }
  return out;
}

/// Q = (1/2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j).
inline double modularity_double_sum(const Graph& g, const std::vector<std::uint32_t>& community) {
  const auto a = adjacency_matrix(g);
  const std::size_t n = a.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (int x : a[i]) k[i] += x;
    two_m += k[i];
  }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (community[i] == community[j]) q += a[i][j] - k[i] * k[j] / two_m;
    }
  }
  return q / two_m;
}

/// Random simple graph: each pair independently present with probability p.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

inline Graph relabel(const Graph& g, const std::vector<NodeId>& perm) {
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(perm[u], perm[v]);
  return Graph::from_edges(g.node_count(), edges);
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph::from_edges(n, e);
}

inline Graph star_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph::from_edges(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  return Graph::from_edges(n, e);
}

/// Each node joined to its k/2 nearest neighbours on either side.
inline Graph ring_lattice(std::size_t n, std::size_t k) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) {
    for (std::size_t j = 1; j <= k / 2; ++j) e.emplace_back(i, static_cast<NodeId>((i + j) % n));
  }
  return Graph::from_edges(n, e);
}

/// Three-dimensional hypercube.
inline Graph cube_graph() {
  std::vector<Edge> e;
  for (NodeId v = 0; v < 8; ++v) {
    for (NodeId bit = 1; bit < 8; bit <<= 1) {
      if ((v & bit) == 0) e.emplace_back(v, v | bit);
    }
  }
  return Graph::from_edges(8, e);
}

/// Two triangles {0,1,2}, {3,4,5} joined by edge 2-3.
inline Graph two_triangles() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}};
  return Graph::from_edges(6, e);
}

/// `count` cliques of `size` nodes, clique c's last node linked to clique c+1's first.
inline Graph ring_of_cliques(std::size_t count, std::size_t size) {
  std::vector<Edge> e;
  for (std::size_t c = 0; c < count; ++c) {
    const auto base = static_cast<NodeId>(c * size);
    for (NodeId i = 0; i < size; ++i) {
      for (NodeId j = i + 1; j < size; ++j) e.emplace_back(base + i, base + j);
    }
    const auto next = static_cast<NodeId>(((c + 1) % count) * size);
    e.emplace_back(static_cast<NodeId>(base + size - 1), next);
  }
  return Graph::from_edges(count * size, e);
}

}  // namespace netdist::oracle
