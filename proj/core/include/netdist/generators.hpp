#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "netdist/graph.hpp"

namespace netdist {

/// G(n, p) with p in (0, 1].
Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng);

/// Preferential attachment: a clique on `seed_clique` nodes, then every new
/// node links to `attachment` distinct existing nodes chosen with probability
/// proportional to degree. Edge count is C(seed_clique, 2) + attachment * (n - seed_clique).
Graph barabasi_albert(std::size_t n, int attachment, int seed_clique, std::mt19937_64& rng);

/// Ring lattice of even degree `ring_degree`, each lattice edge rewired to a
/// uniform new endpoint with probability `rewire`.
Graph watts_strogatz(std::size_t n, int ring_degree, double rewire, std::mt19937_64& rng);

enum class GeneratorKind { kErdosRenyi, kBarabasiAlbert, kWattsStrogatz };

std::string_view to_string(GeneratorKind kind);
/// Accepts ER, BA, WS (case-insensitive). Throws kArgument otherwise.
GeneratorKind parse_generator(std::string_view name);

struct GeneratorParams {
  double edge_probability = 0.01;
  int attachment = 2;
  /// 0 means attachment + 1.
  int seed_clique = 0;
  int ring_degree = 4;
  double rewire_probability = 0.1;
};

struct SyntheticClass {
  std::string label;
  GeneratorKind generator = GeneratorKind::kErdosRenyi;
  std::size_t count = 0;
  std::size_t min_nodes = 0;
  std::size_t max_nodes = 0;
  GeneratorParams params;
};

struct SyntheticCorpusSpec {
  std::vector<SyntheticClass> classes;
  std::uint64_t seed = 0;
};

struct LabeledGraph {
  std::string graph_id;
  std::string category;
  Graph graph;
};

/// Deterministic in spec.seed; node counts uniform in [min_nodes, max_nodes].
/// Throws kArgument on invalid parameters.
std::vector<LabeledGraph> generate_synthetic_corpus(const SyntheticCorpusSpec& spec);

/// Three classes er/ba/ws with `per_class` graphs each over [min_nodes, max_nodes].
SyntheticCorpusSpec benchmark_corpus_spec(std::uint64_t seed, std::size_t per_class = 20,
                                          std::size_t min_nodes = 200,
                                          std::size_t max_nodes = 2000);

}  // namespace netdist
