#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wliso/common.hpp"

namespace wliso {

/// Undirected simple graph on vertices 0..n-1 with optional vertex colors.
/// Color 0 means "uncolored". Safe to share across threads once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);
  Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges);

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edge_count_; }

  /// Rejects loops, duplicates and out-of-range endpoints.
  void add_edge(Vertex u, Vertex v);
  void set_color(Vertex v, std::uint32_t color);

  bool has_edge(Vertex u, Vertex v) const noexcept {
    return (rows_[u * words_ + (v >> 6)] >> (v & 63)) & 1U;
  }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }
  std::size_t degree(Vertex v) const { return adj_[v].size(); }
  std::uint32_t color(Vertex v) const { return colors_[v]; }
  bool colored() const noexcept;

  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

  /// Relabels vertex v to perm[v].
  Graph permuted(std::span<const Vertex> perm) const;
  Graph induced(std::span<const Vertex> vertices) const;

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  void check_vertex(Vertex v) const;

  std::vector<std::vector<Vertex>> adj_;
  std::vector<std::uint64_t> rows_;
  std::vector<std::uint32_t> colors_;
  std::size_t words_ = 0;
  std::size_t edge_count_ = 0;
};

/// A graph together with an optional ternary relation, the vocabulary used
/// for rotation systems. Plain graphs convert implicitly.
class Structure {
 public:
  Structure(Graph graph);  // NOLINT(google-explicit-constructor)
  Structure(Graph graph, std::span<const std::array<Vertex, 3>> triples);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return graph_.size(); }
  bool has_ternary() const noexcept { return has_ternary_; }
  bool ternary(Vertex x, Vertex y, Vertex z) const noexcept {
    if (!has_ternary_) return false;
    const std::size_t n = graph_.size();
    const std::size_t bit = (static_cast<std::size_t>(x) * n + y) * n + z;
    return (ternary_[bit >> 6] >> (bit & 63)) & 1U;
  }

  Structure permuted(std::span<const Vertex> perm) const;

 private:
  Graph graph_;
  std::vector<std::uint64_t> ternary_;
  bool has_ternary_ = false;
};

struct TreeDecomposition {
  /// Adjacency lists of the decomposition tree over nodes 0..bags.size()-1.
  std::vector<std::vector<std::size_t>> tree;
  std::vector<VertexSet> bags;
};

enum class TdFailure {
  None,
  NotATree,
  VertexUncovered,
  EdgeUncovered,
  NotConnected,  // X_i ∩ X_j not contained in some bag on the tree path
  BagOutOfRange,
};

struct TdValidation {
  bool valid = false;
  std::size_t width = 0;
  TdFailure failure = TdFailure::None;
  std::string message;
};

/// Connected components of g after deleting x, each sorted, ordered by their
/// least vertex.
std::vector<VertexSet> flaps(const Graph& g, std::span<const Vertex> x);

/// True iff every flap of g minus x has at most |V(g)|/2 vertices.
bool is_separator(const Graph& g, std::span<const Vertex> x);

/// a united with the flap of g minus a that contains v.
VertexSet odot(const Graph& g, std::span<const Vertex> a, Vertex v);

/// a ∪ c ∪ { x : x reaches a avoiding c, and reaches c avoiding a }.
VertexSet ominus(const Graph& g, std::span<const Vertex> a,
                 std::span<const Vertex> c);

/// BFS distances from source; kInfinite for unreachable vertices.
std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source);
std::uint32_t distance(const Graph& g, Vertex u, Vertex v);
/// Maximum pairwise distance; kInfinite for disconnected graphs with n >= 2.
std::uint32_t diameter(const Graph& g);
bool is_connected(const Graph& g);

TdValidation validate_tree_decomposition(const Graph& g,
                                         const TreeDecomposition& td);
/// Bags intersected with z; a decomposition of g[z] when td decomposes g.
TreeDecomposition restrict_decomposition(const TreeDecomposition& td,
                                         std::span<const Vertex> z);
/// Tree nodes on the path from i to j, inclusive.
std::vector<std::size_t> tree_path(const TreeDecomposition& td, std::size_t i,
                                   std::size_t j);

// Edge-list text format: "n m", then m lines "u v", plus optional lines
// "c v color". Serialization sorts edges and color lines.
Graph parse_edge_list(std::istream& in);
Graph parse_edge_list(const std::string& text);
std::string write_edge_list(const Graph& g);
Graph load_edge_list(const std::string& path);

}  // namespace wliso
