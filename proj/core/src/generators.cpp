#include "netdist/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "netdist/error.hpp"

namespace netdist {
namespace {

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorKind::kArgument, why); }

void check_params(const SyntheticClass& c) {
  const GeneratorParams& p = c.params;
  if (c.min_nodes == 0 || c.min_nodes > c.max_nodes) {
    invalid("class '" + c.label + "': size range must satisfy 0 < min <= max");
  }
  switch (c.generator) {
    case GeneratorKind::kErdosRenyi:
      if (!(p.edge_probability > 0.0 && p.edge_probability <= 1.0)) {
        invalid("class '" + c.label + "': ER edge probability must be in (0, 1]");
      }
      break;
    case GeneratorKind::kBarabasiAlbert: {
      const int clique = p.seed_clique == 0 ? p.attachment + 1 : p.seed_clique;
      if (p.attachment < 1 || clique < p.attachment ||
          c.min_nodes < static_cast<std::size_t>(clique)) {
        invalid("class '" + c.label + "': BA needs attachment >= 1 and attachment <= seed clique <= n");
      }
      break;
    }
    case GeneratorKind::kWattsStrogatz:
      if (p.ring_degree < 2 || p.ring_degree % 2 != 0 ||
          c.min_nodes <= static_cast<std::size_t>(p.ring_degree) ||
          !(p.rewire_probability >= 0.0 && p.rewire_probability <= 1.0)) {
        invalid("class '" + c.label +
                "': WS needs an even ring degree >= 2 below n and rewire probability in [0, 1]");
      }
      break;
  }
}

}  // namespace

Graph erdos_renyi(std::size_t n, double p, std::mt19937_64& rng) {
  if (!(p > 0.0 && p <= 1.0)) invalid("ER edge probability must be in (0, 1]");
  std::vector<Edge> edges;
  if (p == 1.0) {
    for (NodeId u = 0; u < n; ++u) {
      for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Graph::from_edges(n, edges);
  }
  // Geometric skipping over the lower triangle (v < w).
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_q = std::log1p(-p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  const auto nn = static_cast<std::int64_t>(n);
  while (v < nn) {
    const double r = unit(rng);
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < nn) {
      w -= v;
      ++v;
    }
    if (v < nn) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph::from_edges(n, edges);
}

Graph barabasi_albert(std::size_t n, int attachment, int seed_clique, std::mt19937_64& rng) {
  if (seed_clique == 0) seed_clique = attachment + 1;
  if (attachment < 1 || seed_clique < attachment || n < static_cast<std::size_t>(seed_clique)) {
    invalid("BA needs attachment >= 1 and attachment <= seed clique <= n");
  }
  const auto clique = static_cast<NodeId>(seed_clique);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(attachment) * n + clique * clique / 2);
  // Every edge endpoint once: sampling from it is degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * edges.capacity());
  for (NodeId u = 0; u < clique; ++u) {
    for (NodeId v = u + 1; v < clique; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<NodeId> chosen;
  for (auto v = clique; v < n; ++v) {
    chosen.clear();
    while (chosen.size() < static_cast<std::size_t>(attachment)) {
      NodeId target = 0;
      if (endpoints.empty()) {
        target = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
      } else {
        target = endpoints[std::uniform_int_distribution<std::size_t>(0, endpoints.size() - 1)(rng)];
      }
      if (std::find(chosen.begin(), chosen.end(), target) == chosen.end()) chosen.push_back(target);
    }
    for (NodeId t : chosen) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph watts_strogatz(std::size_t n, int ring_degree, double rewire, std::mt19937_64& rng) {
  if (ring_degree < 2 || ring_degree % 2 != 0 || n <= static_cast<std::size_t>(ring_degree) ||
      !(rewire >= 0.0 && rewire <= 1.0)) {
    invalid("WS needs an even ring degree >= 2 below n and rewire probability in [0, 1]");
  }
  std::vector<std::vector<NodeId>> adj(n);
  auto linked = [&adj](NodeId a, NodeId b) {
    return std::find(adj[a].begin(), adj[a].end(), b) != adj[a].end();
  };
  auto unlink = [&adj](NodeId a, NodeId b) {
    adj[a].erase(std::find(adj[a].begin(), adj[a].end(), b));
    adj[b].erase(std::find(adj[b].begin(), adj[b].end(), a));
  };
  const int half = ring_degree / 2;
  for (NodeId i = 0; i < n; ++i) {
    for (int j = 1; j <= half; ++j) {
      const auto k = static_cast<NodeId>((i + static_cast<std::size_t>(j)) % n);
      adj[i].push_back(k);
      adj[k].push_back(i);
    }
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  for (int j = 1; j <= half; ++j) {
    for (NodeId i = 0; i < n; ++i) {
      const auto k = static_cast<NodeId>((i + static_cast<std::size_t>(j)) % n);
      if (!(unit(rng) < rewire) || !linked(i, k)) continue;
      if (adj[i].size() >= n - 1) continue;
      NodeId w = pick(rng);
      while (w == i || linked(i, w)) w = pick(rng);
      unlink(i, k);
      adj[i].push_back(w);
      adj[w].push_back(i);
    }
  }
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId k : adj[i]) {
      if (i < k) edges.emplace_back(i, k);
    }
  }
  return Graph::from_edges(n, edges);
}

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::kErdosRenyi: return "ER";
    case GeneratorKind::kBarabasiAlbert: return "BA";
    case GeneratorKind::kWattsStrogatz: return "WS";
  }
  return "?";
}

GeneratorKind parse_generator(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "ER") return GeneratorKind::kErdosRenyi;
  if (upper == "BA") return GeneratorKind::kBarabasiAlbert;
  if (upper == "WS") return GeneratorKind::kWattsStrogatz;
  invalid("unknown generator '" + std::string(name) + "' (expected ER, BA or WS)");
}

std::vector<LabeledGraph> generate_synthetic_corpus(const SyntheticCorpusSpec& spec) {
  for (const auto& c : spec.classes) check_params(c);
  std::mt19937_64 master(spec.seed);
  std::vector<LabeledGraph> corpus;
  for (const auto& c : spec.classes) {
    for (std::size_t i = 0; i < c.count; ++i) {
      const std::size_t n = std::uniform_int_distribution<std::size_t>(c.min_nodes, c.max_nodes)(master);
      std::mt19937_64 rng(master());
      LabeledGraph lg;
      char id[32];
      std::snprintf(id, sizeof id, "_%03zu", i);
      lg.graph_id = c.label + id;
      lg.category = c.label;
      switch (c.generator) {
        case GeneratorKind::kErdosRenyi:
          lg.graph = erdos_renyi(n, c.params.edge_probability, rng);
          break;
        case GeneratorKind::kBarabasiAlbert:
          lg.graph = barabasi_albert(n, c.params.attachment, c.params.seed_clique, rng);
          break;
        case GeneratorKind::kWattsStrogatz:
          lg.graph = watts_strogatz(n, c.params.ring_degree, c.params.rewire_probability, rng);
          break;
      }
      corpus.push_back(std::move(lg));
    }
  }
  return corpus;
}

SyntheticCorpusSpec benchmark_corpus_spec(std::uint64_t seed, std::size_t per_class,
                                          std::size_t min_nodes, std::size_t max_nodes) {
  SyntheticCorpusSpec spec;
  spec.seed = seed;
  SyntheticClass er{"er", GeneratorKind::kErdosRenyi, per_class, min_nodes, max_nodes, {}};
  er.params.edge_probability = 0.01;
  SyntheticClass ba{"ba", GeneratorKind::kBarabasiAlbert, per_class, min_nodes, max_nodes, {}};
  ba.params.attachment = 2;
  SyntheticClass ws{"ws", GeneratorKind::kWattsStrogatz, per_class, min_nodes, max_nodes, {}};
  ws.params.ring_degree = 4;
  ws.params.rewire_probability = 0.1;
  spec.classes = {er, ba, ws};
  return spec;
}

}  // namespace netdist
