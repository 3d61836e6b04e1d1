#include "netdist/community.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <tuple>

#include "netdist/error.hpp"

namespace netdist {
namespace {

// Weighted graph used between Louvain levels. Internal weight of a node is
// kept apart from its adjacency so that degree = sum(adj weights) + 2 * self.
struct WeightedGraph {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::vector<double> self_weight;

  std::size_t size() const { return self_weight.size(); }
};

WeightedGraph from_graph(const Graph& g) {
  WeightedGraph w;
  const std::size_t n = g.node_count();
  w.offsets.resize(n + 1);
  w.self_weight.assign(n, 0.0);
  w.targets.reserve(2 * g.edge_count());
  for (NodeId v = 0; v < n; ++v) {
    w.offsets[v] = w.targets.size();
    for (NodeId u : g.neighbors(v)) w.targets.push_back(u);
  }
  w.offsets[n] = w.targets.size();
  w.weights.assign(w.targets.size(), 1.0);
  return w;
}

// One local-moving phase. Returns true if any node changed community.
bool move_nodes(const WeightedGraph& g, std::vector<std::uint32_t>& comm, std::mt19937_64& rng) {
  const std::size_t n = g.size();
  std::vector<double> degree(n, 0.0);
  double two_m = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    double k = 2.0 * g.self_weight[v];
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) k += g.weights[e];
    degree[v] = k;
    two_m += k;
  }
  std::vector<double> total(degree);
  std::iota(comm.begin(), comm.end(), 0U);

  // Visit nodes in shuffled order; afterwards only revisit nodes whose
  // neighborhood changed. Every move raises Q, so the queue drains.
  std::deque<std::uint32_t> queue(n);
  std::iota(queue.begin(), queue.end(), 0U);
  std::shuffle(queue.begin(), queue.end(), rng);
  std::vector<char> queued(n, 1);

  std::vector<double> link_weight(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  constexpr double kMinGain = 1e-12;
  while (!queue.empty()) {
    const std::uint32_t v = queue.front();
    queue.pop_front();
    queued[v] = 0;
    const std::uint32_t home = comm[v];
    touched.clear();
    touched.push_back(home);
    seen[home] = 1;
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const std::uint32_t c = comm[g.targets[e]];
      if (!seen[c]) {
        seen[c] = 1;
        touched.push_back(c);
      }
      link_weight[c] += g.weights[e];
    }
    total[home] -= degree[v];
    const double scale = degree[v] / two_m;
    std::uint32_t best = home;
    double best_gain = link_weight[home] - total[home] * scale;
    for (std::uint32_t c : touched) {
      const double gain = link_weight[c] - total[c] * scale;
      if (gain > best_gain + kMinGain) {
        best_gain = gain;
        best = c;
      }
    }
    total[best] += degree[v];
    comm[v] = best;
    for (std::uint32_t c : touched) {
      link_weight[c] = 0.0;
      seen[c] = 0;
    }
    if (best == home) continue;
    any_move = true;
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const std::uint32_t u = g.targets[e];
      if (!queued[u] && comm[u] != best) {
        queued[u] = 1;
        queue.push_back(u);
      }
    }
  }
  return any_move;
}

// Renumbers comm densely by first occurrence; returns community count.
std::size_t renumber(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> remap(comm.size(), kUnreachable);
  std::uint32_t next = 0;
  for (auto& c : comm) {
    if (remap[c] == kUnreachable) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

WeightedGraph aggregate(const WeightedGraph& g, const std::vector<std::uint32_t>& comm,
                        std::size_t count) {
  WeightedGraph out;
  out.self_weight.assign(count, 0.0);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> arcs;
  for (std::size_t v = 0; v < g.size(); ++v) {
    out.self_weight[comm[v]] += g.self_weight[v];
    for (std::size_t e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
      const std::size_t u = g.targets[e];
      if (comm[v] == comm[u]) {
        // Each internal edge is seen from both endpoints.
        out.self_weight[comm[v]] += 0.5 * g.weights[e];
      } else {
        arcs.emplace_back(comm[v], comm[u], g.weights[e]);
      }
    }
  }
  std::sort(arcs.begin(), arcs.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
  });
  out.offsets.assign(count + 1, 0);
  for (std::size_t i = 0; i < arcs.size();) {
    const std::uint32_t a = std::get<0>(arcs[i]);
    const std::uint32_t b = std::get<1>(arcs[i]);
    double w = 0.0;
    for (; i < arcs.size() && std::get<0>(arcs[i]) == a && std::get<1>(arcs[i]) == b; ++i) {
      w += std::get<2>(arcs[i]);
    }
    out.targets.push_back(b);
    out.weights.push_back(w);
    ++out.offsets[a + 1];
  }
  for (std::size_t c = 0; c < count; ++c) out.offsets[c + 1] += out.offsets[c];
  return out;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::size_t distinct_count(std::vector<std::uint64_t> values) {
  std::sort(values.begin(), values.end());
  return static_cast<std::size_t>(std::unique(values.begin(), values.end()) - values.begin());
}

}  // namespace

std::vector<NodeId> canonical_order(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<std::uint64_t> color(n);
  for (NodeId v = 0; v < n; ++v) color[v] = mix(g.degree(v));
  std::size_t classes = distinct_count(color);
  std::vector<std::uint64_t> next(n);
  while (classes < n) {
    for (NodeId v = 0; v < n; ++v) {
      // Commutative sum keeps the neighbor multiset hash order-free.
      std::uint64_t acc = 0;
      for (NodeId u : g.neighbors(v)) acc += mix(color[u]);
      next[v] = mix(color[v] ^ mix(acc));
    }
    const std::size_t refined = distinct_count(next);
    color.swap(next);
    if (refined == classes) break;
    classes = refined;
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&color](NodeId a, NodeId b) {
    return color[a] < color[b] || (color[a] == color[b] && a < b);
  });
  return order;
}

Partition louvain_partition(const Graph& g, std::uint64_t seed) {
  Partition result;
  result.community.resize(g.node_count());
  std::iota(result.community.begin(), result.community.end(), 0U);
  result.community_count = g.node_count();
  if (g.edge_count() == 0) return result;

  // Optimize on the canonically relabelled graph so that the outcome depends
  // on structure rather than on input ids.
  const std::vector<NodeId> order = canonical_order(g);
  std::vector<NodeId> rank(g.node_count());
  for (NodeId i = 0; i < order.size(); ++i) rank[order[i]] = i;
  std::vector<Edge> relabelled = g.edges();
  for (auto& [u, v] : relabelled) {
    u = rank[u];
    v = rank[v];
  }
  const Graph canonical = Graph::from_edges(g.node_count(), relabelled);
  relabelled.clear();
  relabelled.shrink_to_fit();

  std::mt19937_64 rng(seed);
  WeightedGraph level = from_graph(canonical);
  for (;;) {
    std::vector<std::uint32_t> comm(level.size());
    if (!move_nodes(level, comm, rng)) break;
    const std::size_t count = renumber(comm);
    for (auto& c : result.community) c = comm[c];
    if (count == level.size()) break;
    level = aggregate(level, comm, count);
  }
  // result.community is indexed by canonical rank; map back to input ids.
  std::vector<std::uint32_t> by_node(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) by_node[v] = result.community[rank[v]];
  result.community = std::move(by_node);
  result.community_count = renumber(result.community);
  return result;
}

double modularity(const Graph& g, std::span<const std::uint32_t> community) {
  if (community.size() != g.node_count()) {
    throw Error(ErrorKind::kArgument, "partition size does not match node count");
  }
  if (g.edge_count() == 0) {
    throw Error(ErrorKind::kDegenerateInput, "modularity is undefined for an edgeless graph");
  }
  const std::uint32_t count =
      community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> internal(count, 0.0);
  std::vector<double> degree_sum(count, 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    degree_sum[community[v]] += static_cast<double>(g.degree(v));
    for (NodeId u : g.neighbors(v)) {
      if (v < u && community[v] == community[u]) internal[community[v]] += 1.0;
    }
  }
  const double m = static_cast<double>(g.edge_count());
  double q = 0.0;
  for (std::uint32_t c = 0; c < count; ++c) {
    const double share = degree_sum[c] / (2.0 * m);
    q += internal[c] / m - share * share;
  }
  return q;
}

}  // namespace netdist
