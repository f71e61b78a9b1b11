#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "wliso/graph.hpp"

namespace testsupport {

using wliso::Graph;
using wliso::Vertex;

inline Graph path(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline Graph cycle(std::size_t n) {
  Graph g = path(n);
  if (n >= 3) g.add_edge(0, static_cast<Vertex>(n - 1));
  return g;
}

inline Graph complete(std::size_t n) {
  Graph g(n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph star(std::size_t leaves) {
  Graph g(leaves + 1);
  for (Vertex i = 1; i <= leaves; ++i) g.add_edge(0, i);
  return g;
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  Graph g(a.size() + b.size());
  for (auto [u, v] : a.edges()) g.add_edge(u, v);
  const auto off = static_cast<Vertex>(a.size());
  for (auto [u, v] : b.edges()) g.add_edge(u + off, v + off);
  return g;
}

inline Graph petersen() {
  Graph g(10);
  for (Vertex i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
  }
  return g;
}

// Reference oracle: tries all n! bijections.
inline bool permutation_iso(const Graph& g, const Graph& h) {
  if (g.size() != h.size() || g.edge_count() != h.edge_count()) return false;
  std::vector<Vertex> p(g.size());
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (Vertex u = 0; u < g.size() && ok; ++u) {
      if (g.color(u) != h.color(p[u])) ok = false;
      for (Vertex v = u + 1; v < g.size() && ok; ++v)
        if (g.has_edge(u, v) != h.has_edge(p[u], p[v])) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

// Reference components of g - removed by plain BFS, sorted.
inline std::vector<std::vector<Vertex>> reference_components(const Graph& g,
                                                             const std::vector<Vertex>& removed) {
  std::vector<char> gone(g.size(), 0), seen(g.size(), 0);
  for (Vertex x : removed) gone[x] = 1;
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (gone[s] || seen[s]) continue;
    std::vector<Vertex> comp;
    std::queue<Vertex> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      comp.push_back(u);
      for (Vertex w = 0; w < g.size(); ++w)
        if (g.has_edge(u, w) && !gone[w] && !seen[w]) {
          seen[w] = 1;
          q.push(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

// Graph on n vertices whose edges are the set bits of mask over the pairs
// (i, j), i < j, in lexicographic order.
inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
  Graph g(n);
  unsigned bit = 0;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j, ++bit)
      if ((mask >> bit) & 1U) g.add_edge(i, j);
  return g;
}

}  // namespace testsupport
