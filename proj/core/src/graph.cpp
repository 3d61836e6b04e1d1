#include "netdist/graph.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "netdist/error.hpp"

namespace netdist {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kEmptyInput: return "empty input";
    case ErrorKind::kDegenerateInput: return "degenerate input";
    case ErrorKind::kArgument: return "invalid argument";
    case ErrorKind::kInsufficientData: return "insufficient data";
    case ErrorKind::kInsufficientClassSize: return "insufficient class size";
    case ErrorKind::kModelFormat: return "model format error";
    case ErrorKind::kProtocol: return "protocol error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "error";
}

Graph Graph::from_edges(std::size_t node_count, std::span<const Edge> edges) {
  if (node_count >= std::numeric_limits<NodeId>::max()) {
    throw Error(ErrorKind::kArgument, "node count exceeds 32-bit id space");
  }
  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw Error(ErrorKind::kArgument, "edge endpoint " + std::to_string(std::max(u, v)) +
                                            " out of range for " + std::to_string(node_count) +
                                            " nodes");
    }
    if (u == v) continue;
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < node_count; ++i) g.offsets_[i + 1] += g.offsets_[i];

  std::vector<NodeId> adj(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    adj[cursor[u]++] = v;
    adj[cursor[v]++] = u;
  }

  // Sort and dedup each list, then compact.
  std::vector<std::size_t> offsets(node_count + 1, 0);
  std::size_t out = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = adj.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    auto unique_end = std::unique(first, last);
    offsets[v] = out;
    for (auto it = first; it != unique_end; ++it) adj[out++] = *it;
  }
  offsets[node_count] = out;
  adj.resize(out);
  adj.shrink_to_fit();
  g.offsets_ = std::move(offsets);
  g.neighbors_ = std::move(adj);
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count()) return false;
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> result;
  result.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u) {
    for (NodeId v : neighbors(u)) {
      if (u < v) result.emplace_back(u, v);
    }
  }
  return result;
}

Graph Graph::induced_subgraph(const std::vector<bool>& keep) const {
  std::vector<NodeId> remap(node_count(), kUnreachable);
  NodeId next = 0;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (v < keep.size() && keep[v]) remap[v] = next++;
  }
  std::vector<Edge> kept;
  for (const auto& [u, v] : edges()) {
    if (remap[u] != kUnreachable && remap[v] != kUnreachable) kept.emplace_back(remap[u], remap[v]);
  }
  return from_edges(next, kept);
}

ComponentLabeling connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  ComponentLabeling labels;
  labels.component_id.assign(n, kUnreachable);
  std::vector<NodeId> stack;
  for (NodeId start = 0; start < n; ++start) {
    if (labels.component_id[start] != kUnreachable) continue;
    const auto id = static_cast<std::uint32_t>(labels.component_sizes.size());
    std::size_t size = 0;
    labels.component_id[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++size;
      for (NodeId w : g.neighbors(v)) {
        if (labels.component_id[w] == kUnreachable) {
          labels.component_id[w] = id;
          stack.push_back(w);
        }
      }
    }
    labels.component_sizes.push_back(size);
    if (size > labels.component_sizes[labels.largest_component_id]) {
      labels.largest_component_id = id;
    }
  }
  return labels;
}

std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source) {
  if (source >= g.node_count()) {
    throw Error(ErrorKind::kArgument, "bfs source " + std::to_string(source) +
                                          " out of range for " + std::to_string(g.node_count()) +
                                          " nodes");
  }
  std::vector<std::uint32_t> dist(g.node_count(), kUnreachable);
  std::vector<NodeId> frontier{source};
  std::vector<NodeId> next;
  dist[source] = 0;
  std::uint32_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (NodeId v : frontier) {
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] == kUnreachable) {
          dist[w] = level;
          next.push_back(w);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

}  // namespace netdist
