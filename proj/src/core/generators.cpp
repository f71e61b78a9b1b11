#include "wliso/generators.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <set>

namespace wliso::gen {

namespace {

struct Matcher {
  const Structure& g;
  const Structure& h;
  std::vector<Vertex> order;
  std::vector<Vertex> f;
  std::vector<char> used;

  bool ternary_consistent(std::size_t depth) const {
    if (!g.has_ternary() && !h.has_ternary()) return true;
    const Vertex x = order[depth];
    for (std::size_t i = 0; i <= depth; ++i)
      for (std::size_t j = 0; j <= depth; ++j) {
        const Vertex p = order[i], q = order[j];
        const Vertex fx = f[x], fp = f[p], fq = f[q];
        if (g.ternary(x, p, q) != h.ternary(fx, fp, fq) ||
            g.ternary(p, x, q) != h.ternary(fp, fx, fq) ||
            g.ternary(p, q, x) != h.ternary(fp, fq, fx))
          return false;
      }
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order.size()) return true;
    const Vertex x = order[depth];
    const Graph& gg = g.graph();
    const Graph& hh = h.graph();
    for (Vertex y = 0; y < hh.size(); ++y) {
      if (used[y] || hh.degree(y) != gg.degree(x) || hh.color(y) != gg.color(x))
        continue;
      bool ok = true;
      for (std::size_t i = 0; i < depth && ok; ++i) {
        const Vertex p = order[i];
        ok = gg.has_edge(x, p) == hh.has_edge(y, f[p]);
      }
      if (!ok) continue;
      f[x] = y;
      used[y] = 1;
      if (ternary_consistent(depth) && extend(depth + 1)) return true;
      used[y] = 0;
      f[x] = kInfinite;
    }
    return false;
  }
};

std::vector<std::pair<std::uint32_t, std::size_t>> degree_color_profile(
    const Graph& g) {
  std::vector<std::pair<std::uint32_t, std::size_t>> p;
  for (Vertex v = 0; v < g.size(); ++v) p.emplace_back(g.color(v), g.degree(v));
  std::sort(p.begin(), p.end());
  return p;
}

// Isomorphism invariant used only to bucket candidates before exact checks.
std::vector<std::uint64_t> invariant(const Graph& g) {
  std::vector<std::uint64_t> per_vertex;
  for (Vertex v = 0; v < g.size(); ++v) {
    std::vector<std::uint64_t> nd;
    for (Vertex w : g.neighbors(v)) nd.push_back(g.degree(w));
    std::sort(nd.begin(), nd.end());
    std::uint64_t h = mix64(g.degree(v) * 1315423911ULL + g.color(v));
    for (auto d : nd) h = mix64(h ^ (d + 0x51ed27ULL));
    std::size_t tri = 0;
    for (Vertex a : g.neighbors(v))
      for (Vertex b : g.neighbors(v))
        if (a < b && g.has_edge(a, b)) ++tri;
    per_vertex.push_back(mix64(h ^ (tri * 0x9e37ULL)));
  }
  std::sort(per_vertex.begin(), per_vertex.end());
  per_vertex.push_back(g.edge_count());
  return per_vertex;
}

}  // namespace

std::optional<std::vector<Vertex>> brute_force_iso(const Structure& g,
                                                   const Structure& h,
                                                   std::size_t max_vertices) {
  const std::size_t n = g.size();
  if (n != h.size() || g.graph().edge_count() != h.graph().edge_count())
    return std::nullopt;
  if (n > max_vertices)
    fail(ErrorCode::BudgetExceeded, "brute-force oracle limited to " +
                                        std::to_string(max_vertices) +
                                        " vertices");
  if (degree_color_profile(g.graph()) != degree_color_profile(h.graph()))
    return std::nullopt;
  Matcher m{g, h, {}, std::vector<Vertex>(n, kInfinite), std::vector<char>(n, 0)};
  // BFS order so that every vertex after the first of its component has a
  // mapped neighbor, which makes the adjacency checks bite early.
  std::vector<char> placed(n, 0);
  std::vector<Vertex> roots(n);
  std::iota(roots.begin(), roots.end(), 0U);
  std::stable_sort(roots.begin(), roots.end(), [&](Vertex a, Vertex b) {
    return g.graph().degree(a) > g.graph().degree(b);
  });
  for (Vertex r : roots) {
    if (placed[r]) continue;
    std::size_t head = m.order.size();
    m.order.push_back(r);
    placed[r] = 1;
    while (head < m.order.size()) {
      const Vertex u = m.order[head++];
      for (Vertex w : g.graph().neighbors(u))
        if (!placed[w]) {
          placed[w] = 1;
          m.order.push_back(w);
        }
    }
  }
  if (!m.extend(0)) return std::nullopt;
  return m.f;
}

Graph gen_cfi_twisted(const Graph& base,
                      std::span<const std::pair<Vertex, Vertex>> twisted) {
  if (!is_connected(base)) fail(ErrorCode::InvalidArgument, "CFI base must be connected");
  const std::size_t nb = base.size();
  std::set<std::pair<Vertex, Vertex>> twist;
  for (auto [u, v] : twisted) {
    if (!base.has_edge(u, v)) fail(ErrorCode::InvalidArgument, "twisted pair is not a base edge");
    twist.emplace(std::min(u, v), std::max(u, v));
  }
  // Vertex ids: gadgets in base-vertex order, even subsets ascending.
  std::vector<std::vector<std::uint32_t>> even(nb);
  std::vector<std::vector<Vertex>> id(nb);
  Vertex next = 0;
  for (Vertex v = 0; v < nb; ++v) {
    const std::size_t d = base.degree(v);
    if (d > 20) fail(ErrorCode::BudgetExceeded, "CFI base degree too large");
    for (std::uint32_t s = 0; s < (1U << d); ++s)
      if (std::popcount(s) % 2 == 0) {
        even[v].push_back(s);
        id[v].push_back(next++);
      }
  }
  Graph g(next);
  for (Vertex v = 0; v < nb; ++v)
    for (Vertex x : id[v]) g.set_color(x, v + 1);
  auto position = [&](Vertex v, Vertex w) {
    const auto nbv = base.neighbors(v);
    return static_cast<std::uint32_t>(std::lower_bound(nbv.begin(), nbv.end(), w) -
                                      nbv.begin());
  };
  for (auto [v, w] : base.edges()) {
    const bool flip = twist.count({v, w}) > 0;
    const std::uint32_t pv = position(v, w), pw = position(w, v);
    for (std::size_t i = 0; i < even[v].size(); ++i)
      for (std::size_t j = 0; j < even[w].size(); ++j) {
        const bool bs = (even[v][i] >> pv) & 1U;
        const bool bt = (even[w][j] >> pw) & 1U;
        if ((bs == bt) != flip) g.add_edge(id[v][i], id[w][j]);
      }
  }
  return g;
}

Graph gen_cfi(const Graph& base, bool twist) {
  if (!twist) return gen_cfi_twisted(base, {});
  const auto edges = base.edges();
  if (edges.empty()) fail(ErrorCode::InvalidArgument, "twisting needs a base edge");
  return gen_cfi_twisted(base, std::span(edges.data(), 1));
}

PartialKTree gen_partial_ktree(std::size_t n, std::size_t k, std::uint64_t seed,
                               double keep, bool connected) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "k must be >= 1");
  if (keep < 0.0 || keep > 1.0) fail(ErrorCode::InvalidArgument, "keep must lie in [0,1]");
  SplitMix64 rng(seed);
  PartialKTree out;
  out.graph = Graph(n);
  if (n == 0) return out;
  const std::size_t core = std::min(n, k + 1);
  VertexSet first(core);
  std::iota(first.begin(), first.end(), 0U);
  out.decomposition.bags.push_back(first);
  out.decomposition.tree.emplace_back();
  for (Vertex u = 0; u < core; ++u)
    for (Vertex v = u + 1; v < core; ++v) {
      const bool spine = connected && v == u + 1;
      if (spine || rng.unit() < keep) out.graph.add_edge(u, v);
    }
  for (Vertex v = static_cast<Vertex>(core); v < n; ++v) {
    const std::size_t parent = rng.below(out.decomposition.bags.size());
    VertexSet clique = out.decomposition.bags[parent];
    clique.erase(clique.begin() + static_cast<std::ptrdiff_t>(rng.below(clique.size())));
    for (std::size_t i = 0; i < clique.size(); ++i)
      if ((connected && i == 0) || rng.unit() < keep) out.graph.add_edge(clique[i], v);
    clique.push_back(v);
    out.decomposition.bags.push_back(clique);
    const std::size_t node = out.decomposition.bags.size() - 1;
    out.decomposition.tree.emplace_back();
    out.decomposition.tree[node].push_back(parent);
    out.decomposition.tree[parent].push_back(node);
  }
  return out;
}

Graph gen_tree(std::size_t n, std::uint64_t seed) {
  Graph g(n);
  if (n < 2) return g;
  if (n == 2) {
    g.add_edge(0, 1);
    return g;
  }
  SplitMix64 rng(seed);
  std::vector<Vertex> pruefer(n - 2);
  for (auto& x : pruefer) x = static_cast<Vertex>(rng.below(n));
  std::vector<std::size_t> degree(n, 1);
  for (Vertex x : pruefer) ++degree[x];
  std::set<Vertex> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (degree[v] == 1) leaves.insert(v);
  for (Vertex x : pruefer) {
    const Vertex leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    g.add_edge(leaf, x);
    if (--degree[x] == 1) leaves.insert(x);
  }
  const Vertex u = *leaves.begin();
  const Vertex w = *std::next(leaves.begin());
  g.add_edge(u, w);
  return g;
}

std::pair<Graph, Graph> gen_regular_pair(std::size_t n) {
  if (n < 6) fail(ErrorCode::InvalidArgument, "regular pair needs n >= 6");
  Graph cycle(n), split(n);
  for (Vertex v = 0; v < n; ++v) cycle.add_edge(v, static_cast<Vertex>((v + 1) % n));
  const std::size_t a = n / 2;
  for (Vertex v = 0; v < a; ++v) split.add_edge(v, static_cast<Vertex>((v + 1) % a));
  for (Vertex v = 0; v < n - a; ++v)
    split.add_edge(static_cast<Vertex>(a + v), static_cast<Vertex>(a + (v + 1) % (n - a)));
  return {std::move(cycle), std::move(split)};
}

std::vector<Vertex> random_permutation(std::size_t n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), 0U);
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Graph g(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.unit() < p) g.add_edge(u, v);
  return g;
}

rotation::RotationSystem gen_rotation(std::size_t n, std::uint64_t seed,
                                      double extra_edge_prob) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "rotation system needs n >= 1");
  SplitMix64 rng(seed);
  const auto label = random_permutation(n, rng.next());
  std::vector<std::vector<Vertex>> nb(n);
  std::set<std::pair<Vertex, Vertex>> edges;
  auto link = [&](Vertex u, Vertex v) {
    if (edges.emplace(std::min(u, v), std::max(u, v)).second) {
      nb[u].push_back(v);
      nb[v].push_back(u);
    }
  };
  for (Vertex i = 1; i < n; ++i)
    link(label[i], label[rng.below(i)]);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.unit() < extra_edge_prob) link(u, v);
  for (auto& list : nb) {
    std::sort(list.begin(), list.end());
    for (std::size_t i = list.size(); i > 1; --i)
      std::swap(list[i - 1], list[rng.below(i)]);
  }
  return rotation::RotationSystem(nb);
}

std::vector<rotation::RotationSystem> rotations_of(const Graph& g,
                                                   std::size_t limit,
                                                   std::uint64_t seed) {
  const std::size_t n = g.size();
  // Number of systems: product of (deg - 1)!.
  long double total = 1;
  for (Vertex v = 0; v < n; ++v)
    for (std::size_t i = 2; i < g.degree(v); ++i) total *= static_cast<long double>(i);
  std::vector<rotation::RotationSystem> out;
  if (total <= static_cast<long double>(limit)) {
    std::vector<std::vector<std::vector<Vertex>>> choices(n);
    for (Vertex v = 0; v < n; ++v) {
      std::vector<Vertex> nb(g.neighbors(v).begin(), g.neighbors(v).end());
      if (nb.size() <= 2) {
        choices[v].push_back(nb);
        continue;
      }
      std::vector<Vertex> tail(nb.begin() + 1, nb.end());
      do {
        std::vector<Vertex> order{nb.front()};
        order.insert(order.end(), tail.begin(), tail.end());
        choices[v].push_back(std::move(order));
      } while (std::next_permutation(tail.begin(), tail.end()));
    }
    std::vector<std::size_t> pick(n, 0);
    while (true) {
      std::vector<std::vector<Vertex>> orders(n);
      for (Vertex v = 0; v < n; ++v) orders[v] = choices[v][pick[v]];
      out.emplace_back(orders);
      std::size_t v = 0;
      while (v < n && ++pick[v] == choices[v].size()) pick[v++] = 0;
      if (v == n) break;
    }
    return out;
  }
  SplitMix64 rng(seed);
  std::set<std::vector<std::array<Vertex, 3>>> seen;
  for (std::size_t attempt = 0; attempt < limit * 4 && out.size() < limit; ++attempt) {
    std::vector<std::vector<Vertex>> orders(n);
    for (Vertex v = 0; v < n; ++v) {
      orders[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
      for (std::size_t i = orders[v].size(); i > 2; --i)
        std::swap(orders[v][i - 1], orders[v][1 + rng.below(i - 1)]);
    }
    rotation::RotationSystem r(orders);
    if (seen.insert(r.triples()).second) out.push_back(std::move(r));
  }
  return out;
}

std::size_t exact_treewidth(const Graph& g) {
  const std::size_t n = g.size();
  if (n > 12) fail(ErrorCode::BudgetExceeded, "exact treewidth limited to n <= 12");
  if (n == 0) return 0;
  const std::uint32_t full = (1U << n) - 1;
  std::vector<std::uint32_t> nbmask(n, 0);
  for (auto [u, v] : g.edges()) {
    nbmask[u] |= 1U << v;
    nbmask[v] |= 1U << u;
  }
  // q(S, v): vertices outside S ∪ {v} reachable from v through S.
  auto q = [&](std::uint32_t s, Vertex v) {
    std::uint32_t inside = 1U << v, frontier = 1U << v, outside = 0;
    while (frontier) {
      const Vertex u = static_cast<Vertex>(std::countr_zero(frontier));
      frontier &= frontier - 1;
      const std::uint32_t nb = nbmask[u];
      outside |= nb & ~s & ~(1U << v);
      const std::uint32_t grow = nb & s & ~inside;
      inside |= grow;
      frontier |= grow;
    }
    return static_cast<int>(std::popcount(outside));
  };
  std::vector<int> tw(full + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = std::numeric_limits<int>::max();
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const Vertex v = static_cast<Vertex>(std::countr_zero(rest));
      const std::uint32_t without = s & ~(1U << v);
      best = std::min(best, std::max(tw[without], q(without, v)));
    }
    tw[s] = best;
  }
  return static_cast<std::size_t>(std::max(tw[full], 0));
}

std::vector<Graph> unique_up_to_iso(const std::vector<Graph>& graphs,
                                    std::size_t max_vertices) {
  std::map<std::pair<std::size_t, std::vector<std::uint64_t>>, std::vector<std::size_t>>
      buckets;
  std::vector<Graph> out;
  for (const Graph& g : graphs) {
    auto& bucket = buckets[{g.size(), invariant(g)}];
    bool dup = false;
    for (std::size_t idx : bucket)
      if (brute_force_iso(out[idx], g, max_vertices)) {
        dup = true;
        break;
      }
    if (!dup) {
      bucket.push_back(out.size());
      out.push_back(g);
    }
  }
  return out;
}

std::vector<Graph> all_graphs(std::size_t n) {
  if (n > 7) fail(ErrorCode::BudgetExceeded, "graph catalog limited to n <= 7");
  static std::mutex mutex;
  static std::vector<std::vector<Graph>> cache;
  std::lock_guard lock(mutex);
  if (cache.empty()) cache.push_back({Graph(0)});
  while (cache.size() <= n) {
    const std::size_t m = cache.size();
    std::vector<Graph> candidates;
    for (const Graph& base : cache.back())
      for (std::uint32_t s = 0; s < (1U << (m - 1)); ++s) {
        Graph g(m);
        for (auto [u, v] : base.edges()) g.add_edge(u, v);
        for (Vertex u = 0; u + 1 < m; ++u)
          if ((s >> u) & 1U) g.add_edge(u, static_cast<Vertex>(m - 1));
        candidates.push_back(std::move(g));
      }
    cache.push_back(unique_up_to_iso(candidates, m));
  }
  return cache[n];
}

}  // namespace wliso::gen
