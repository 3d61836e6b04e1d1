#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netdist/graph.hpp"

namespace netdist {

struct Partition {
  /// community[v] in 0..community_count-1, numbered by smallest member node.
  std::vector<std::uint32_t> community;
  std::size_t community_count = 0;
};

/// Nodes sorted by a color-refinement hash of their neighborhood structure,
/// ties broken by id. Relabelling the graph permutes the result accordingly
/// whenever refinement separates all non-automorphic nodes.
std::vector<NodeId> canonical_order(const Graph& g);

/// Multi-level greedy modularity maximization (Louvain, resolution 1), run on
/// canonical_order ids. Node visiting order in each level is a seeded shuffle.
Partition louvain_partition(const Graph& g, std::uint64_t seed);

/// Newman modularity of an arbitrary partition, from per-community internal
/// edge counts and degree sums. Throws kDegenerateInput for edgeless graphs.
double modularity(const Graph& g, std::span<const std::uint32_t> community);

}  // namespace netdist
