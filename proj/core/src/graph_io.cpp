#include <algorithm>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>

#include "netdist/error.hpp"
#include "netdist/graph.hpp"

namespace netdist {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& rest) {
  std::size_t i = 0;
  while (i < rest.size() && is_space(rest[i])) ++i;
  std::size_t j = i;
  while (j < rest.size() && !is_space(rest[j])) ++j;
  std::string_view token = rest.substr(i, j - i);
  rest.remove_prefix(j);
  return token;
}

std::int64_t parse_id(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) + ": token '" +
                                       std::string(token) + "' is not an integer node id");
  }
  return value;
}

}  // namespace

Graph load_edge_list(std::istream& in, const LoadOptions& options) {
  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view rest(line);
    std::string_view first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    std::string_view second = next_token(rest);
    if (second.empty()) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(line_no) + ": expected two node ids, found one");
    }
    std::int64_t u = parse_id(first, line_no);
    std::int64_t v = parse_id(second, line_no);
    if (u == v) continue;
    raw.emplace_back(u, v);
  }
  if (in.bad()) throw Error(ErrorKind::kIo, "read failure while loading edge list");

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw Error(ErrorKind::kEmptyInput, "edge list contains no edges");

  auto dense = [&ids](std::int64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) edges.emplace_back(dense(u), dense(v));
  raw.clear();
  raw.shrink_to_fit();

  Graph g = Graph::from_edges(ids.size(), edges);
  if (!options.keep_largest_component) return g;

  const ComponentLabeling labels = connected_components(g);
  if (labels.component_sizes.size() == 1) return g;
  std::vector<bool> keep(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    keep[v] = labels.component_id[v] == labels.largest_component_id;
  }
  return g.induced_subgraph(keep);
}

Graph load_edge_list_file(const std::string& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open edge list '" + path + "'");
  return load_edge_list(in, options);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

}  // namespace netdist
