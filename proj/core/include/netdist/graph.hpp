#pragma once

#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace netdist {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Undirected simple graph in compressed sparse row form.
///
/// Neighbor lists are sorted and contain neither duplicates nor the node
/// itself; j is a neighbor of i exactly when i is a neighbor of j. A Graph is
/// immutable once built and can be shared freely between threads.
class Graph {
 public:
  Graph() = default;

  /// Builds a graph on `node_count` nodes. Self-loops and repeated edges in
  /// either orientation are dropped. Throws kArgument on out-of-range ids.
  static Graph from_edges(std::size_t node_count, std::span<const Edge> edges);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  /// Edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  /// Subgraph induced by the nodes with keep[v] true, relabelled densely in
  /// increasing id order.
  Graph induced_subgraph(const std::vector<bool>& keep) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

struct ComponentLabeling {
  std::vector<std::uint32_t> component_id;
  std::vector<std::size_t> component_sizes;
  std::uint32_t largest_component_id = 0;
};

/// Component ids are assigned in order of each component's smallest node id.
/// The largest component is the lowest-numbered one among those of maximal size.
ComponentLabeling connected_components(const Graph& g);

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

/// Unweighted single-source distances; unreachable nodes hold kUnreachable.
std::vector<std::uint32_t> bfs_distances(const Graph& g, NodeId source);

struct LoadOptions {
  bool keep_largest_component = false;
};

/// Reads a whitespace-separated edge list. Lines starting with '#' and blank
/// lines are skipped; columns past the second are ignored. External ids are
/// remapped to 0..n-1 in increasing numeric order.
Graph load_edge_list(std::istream& in, const LoadOptions& options = {});
Graph load_edge_list_file(const std::string& path, const LoadOptions& options = {});

/// Writes "u v" per edge with u < v, in sorted order.
void write_edge_list(std::ostream& out, const Graph& g);

}  // namespace netdist
