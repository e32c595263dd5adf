#include "graphmetro/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "graphmetro/errors.hpp"

namespace graphmetro {
namespace {

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.size()) {
    throw ValidationError("vertex " + std::to_string(v) + " out of range for a graph on " +
                          std::to_string(g.size()) + " vertices");
  }
}

std::vector<Edge> chain_edges(int n) {
  std::vector<Edge> e;
  for (int v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return e;
}

}  // namespace

bool Graph::adjacent(int a, int b) const {
  check_vertex(*this, a);
  check_vertex(*this, b);
  return (adjacency_[static_cast<std::size_t>(a)] >> b) & 1U;
}

std::uint64_t Graph::neighborhood_mask(int v) const {
  check_vertex(*this, v);
  return adjacency_[static_cast<std::size_t>(v)];
}

std::vector<int> Graph::neighborhood(int v) const {
  std::vector<int> out;
  const std::uint64_t m = neighborhood_mask(v);
  for (int u = 0; u < size(); ++u) {
    if ((m >> u) & 1U) out.push_back(u);
  }
  return out;
}

int Graph::degree(int v) const { return std::popcount(neighborhood_mask(v)); }

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  for (int a = 0; a < size(); ++a) {
    for (int b = a + 1; b < size(); ++b) {
      if ((adjacency_[static_cast<std::size_t>(a)] >> b) & 1U) out.emplace_back(a, b);
    }
  }
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (auto m : adjacency_) twice += static_cast<std::size_t>(std::popcount(m));
  return twice / 2;
}

bool Graph::no_isolated() const {
  return std::none_of(adjacency_.begin(), adjacency_.end(), [](auto m) { return m == 0; });
}

std::vector<int> Graph::isolated_vertices() const {
  std::vector<int> out;
  for (int v = 0; v < size(); ++v) {
    if (adjacency_[static_cast<std::size_t>(v)] == 0) out.push_back(v);
  }
  return out;
}

Graph build_graph(int n, std::span<const Edge> edges) {
  if (n < 1 || n > Graph::kMaxVertices) {
    throw ValidationError("vertex count must be in [1, 64], got " + std::to_string(n));
  }
  Graph g;
  g.adjacency_.assign(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw ValidationError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") references a vertex outside [0, " + std::to_string(n - 1) + "]");
    }
    if (a == b) throw ValidationError("self-loop on vertex " + std::to_string(a));
    auto& row = g.adjacency_[static_cast<std::size_t>(a)];
    if ((row >> b) & 1U) {
      throw ValidationError("duplicate edge (" + std::to_string(std::min(a, b)) + ", " +
                            std::to_string(std::max(a, b)) + ")");
    }
    row |= std::uint64_t{1} << b;
    g.adjacency_[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
  }
  return g;
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = {"complete", "chain",   "ring",
                                                 "star",     "triangle_pendant", "diamond"};
  return names;
}

Graph catalog(std::string_view name, int n) {
  auto need = [&](bool ok, const char* what) {
    if (!ok) {
      throw ValidationError("graph class '" + std::string(name) + "' " + what + ", got n=" +
                            std::to_string(n));
    }
  };
  std::vector<Edge> e;
  if (name == "complete") {
    need(n >= 1, "needs n >= 1");
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  } else if (name == "chain") {
    need(n >= 1, "needs n >= 1");
    e = chain_edges(n);
  } else if (name == "ring") {
    need(n >= 3, "needs n >= 3");
    e = chain_edges(n);
    e.emplace_back(0, n - 1);
  } else if (name == "star") {
    need(n >= 2, "needs n >= 2");
    for (int v = 1; v < n; ++v) e.emplace_back(0, v);
  } else if (name == "triangle_pendant") {
    need(n == 4, "is defined only for n=4");
    e = {{0, 1}, {0, 2}, {1, 2}, {2, 3}};
  } else if (name == "diamond") {
    need(n == 4, "is defined only for n=4");
    e = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3}};
  } else {
    throw ValidationError("unknown graph class '" + std::string(name) + "'");
  }
  return build_graph(n, e);
}

std::vector<std::pair<std::string, Graph>> four_vertex_classes() {
  std::vector<std::pair<std::string, Graph>> out;
  for (const auto& name : catalog_names()) out.emplace_back(name, catalog(name, 4));
  return out;
}

long topological_number(const Graph& g) {
  long count = 0;
  const int n = g.size();
  for (int a = 0; a < n; ++a) {
    const std::uint64_t na = g.neighborhood_mask(a);
    for (int b = a + 1; b < n; ++b) {
      if (!((na >> b) & 1U)) continue;
      // Common neighbours above b; every adjacent pair among them closes a 4-clique.
      std::uint64_t common = na & g.neighborhood_mask(b);
      common &= ~((std::uint64_t{2} << b) - 1);
      while (common != 0) {
        const int c = std::countr_zero(common);
        common &= common - 1;
        count += std::popcount(common & g.neighborhood_mask(c));
      }
    }
  }
  return count;
}

Graph sjcr_connect(const Graph& a, int joint_a, const Graph& b, int joint_b) {
  check_vertex(a, joint_a);
  check_vertex(b, joint_b);
  const int total = a.size() + b.size() - 1;
  if (total > Graph::kMaxVertices) throw ValidationError("connected graph exceeds 64 vertices");
  std::vector<int> map_b(static_cast<std::size_t>(b.size()));
  int next = a.size();
  for (int v = 0; v < b.size(); ++v) map_b[static_cast<std::size_t>(v)] = v == joint_b ? joint_a : next++;
  std::vector<Edge> edges = a.edges();
  for (auto [u, v] : b.edges()) {
    edges.emplace_back(map_b[static_cast<std::size_t>(u)], map_b[static_cast<std::size_t>(v)]);
  }
  return build_graph(total, edges);
}

std::vector<Edge> duplicate_neighborhood_pairs(const Graph& g) {
  std::vector<Edge> out;
  for (int j = 0; j < g.size(); ++j)
    for (int k = j + 1; k < g.size(); ++k)
      if (g.neighborhood_mask(j) == g.neighborhood_mask(k)) out.emplace_back(j, k);
  return out;
}

bool has_duplicate_neighborhoods(const Graph& g) { return !duplicate_neighborhood_pairs(g).empty(); }

Graph relabel(const Graph& g, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != g.size()) {
    throw ValidationError("permutation length does not match the vertex count");
  }
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= g.size() || seen[static_cast<std::size_t>(p)]) {
      throw ValidationError("relabel: not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Edge> edges;
  for (auto [u, v] : g.edges()) {
    edges.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  }
  return build_graph(g.size(), edges);
}

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::vector<int> edge_lines;
  int declared = -1;
  bool seen_content = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first == "n") {
      if (seen_content) throw ParseError("vertex-count header must precede all edges", line_no);
      long count = 0;
      std::string extra;
      if (!(fields >> count) || (fields >> extra)) throw ParseError("expected 'n <count>'", line_no);
      if (count < 1 || count > Graph::kMaxVertices) {
        throw ParseError("vertex count must be in [1, 64]", line_no);
      }
      declared = static_cast<int>(count);
      seen_content = true;
      continue;
    }
    seen_content = true;
    std::istringstream pair_stream(line);
    long u = 0;
    long v = 0;
    std::string extra;
    if (!(pair_stream >> u >> v) || (pair_stream >> extra)) {
      throw ParseError("expected two vertex indices 'u v'", line_no);
    }
    if (u < 0 || v < 0 || u >= Graph::kMaxVertices || v >= Graph::kMaxVertices) {
      throw ParseError("vertex index out of range [0, 63]", line_no);
    }
    if (u == v) throw ParseError("self-loop on vertex " + std::to_string(u), line_no);
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    edge_lines.push_back(line_no);
  }
  int n = declared;
  if (n < 0) {
    n = 0;
    for (auto [u, v] : edges) n = std::max({n, u + 1, v + 1});
    if (n == 0) throw ParseError("edge list declares no vertices", line_no);
  }
  std::set<Edge> seen;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u >= n || v >= n) {
      throw ParseError("vertex index exceeds declared count " + std::to_string(n), edge_lines[i]);
    }
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw ParseError("duplicate edge", edge_lines[i]);
    }
  }
  return build_graph(n, edges);
}

Graph load_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge-list file '" + path.string() + "'");
  return parse_edge_list(in);
}

}  // namespace graphmetro
