#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace graphmetro {

using Edge = std::pair<int, int>;

/// Undirected simple graph on at most 64 vertices, stored as neighbourhood bit masks.
class Graph {
 public:
  static constexpr int kMaxVertices = 64;

  Graph() = default;

  int size() const noexcept { return static_cast<int>(adjacency_.size()); }
  bool adjacent(int a, int b) const;
  /// Bit v of the mask is set when v is a neighbour.
  std::uint64_t neighborhood_mask(int v) const;
  std::vector<int> neighborhood(int v) const;
  int degree(int v) const;
  /// Edges (a, b) with a < b in lexicographic order.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  /// True when every vertex has at least one neighbour.
  bool no_isolated() const;
  std::vector<int> isolated_vertices() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend Graph build_graph(int n, std::span<const Edge> edges);
  std::vector<std::uint64_t> adjacency_;
};

/// Validates and builds a graph. Rejects self-loops, out-of-range vertices and
/// duplicated edges (after ordering each pair).
Graph build_graph(int n, std::span<const Edge> edges);
inline Graph build_graph(int n, std::initializer_list<Edge> edges) {
  return build_graph(n, std::span<const Edge>(edges.begin(), edges.size()));
}

/// Named graph families: complete, chain, ring, star (centre 0), and the two remaining
/// connected four-vertex classes triangle_pendant and diamond.
Graph catalog(std::string_view name, int n);
const std::vector<std::string>& catalog_names();

/// The six connected four-vertex isomorphism classes, in catalog order.
std::vector<std::pair<std::string, Graph>> four_vertex_classes();

/// Number of 4-cliques.
long topological_number(const Graph& g);

/// Disjoint union of a and b with joint_a and joint_b identified. Vertices of a keep
/// their indices; the remaining vertices of b follow in their original order.
Graph sjcr_connect(const Graph& a, int joint_a, const Graph& b, int joint_b);

/// Pairs j < k with N(j) == N(k).
std::vector<Edge> duplicate_neighborhood_pairs(const Graph& g);
bool has_duplicate_neighborhoods(const Graph& g);

/// Graph with vertex v renamed to perm[v].
Graph relabel(const Graph& g, std::span<const int> perm);

/// Parses the edge-list text format: one "u v" pair per line, 0-based; '#' starts a
/// comment; blank lines are ignored; an optional leading "n <count>" line fixes the
/// vertex count, otherwise it is max index + 1. Errors carry the offending line number.
Graph parse_edge_list(std::istream& in);
Graph load_edge_list(const std::filesystem::path& path);

}  // namespace graphmetro
