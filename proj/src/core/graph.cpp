#include "wliso/graph.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <sstream>

namespace wliso {

unsigned default_threads() {
  if (const char* env = std::getenv("WLISO_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 1;
}

std::uint64_t default_tuple_budget() {
  if (const char* env = std::getenv("WLISO_TUPLE_BUDGET")) {
    const unsigned long long v = std::strtoull(env, nullptr, 10);
    if (v > 0) return v;
  }
  return 10'000'000ULL;
}

double log2n(std::size_t n) { return std::log2(static_cast<double>(n)); }

Graph::Graph(std::size_t n)
    : adj_(n), colors_(n, 0), words_((n + 63) / 64) {
  rows_.assign(n * words_, 0);
}

Graph::Graph(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges)
    : Graph(n) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(Vertex v) const {
  if (v >= size())
    fail(ErrorCode::InvalidArgument,
         "vertex " + std::to_string(v) + " out of range (n=" +
             std::to_string(size()) + ")");
}

void Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v)
    fail(ErrorCode::InvalidArgument, "self-loop at " + std::to_string(u));
  if (has_edge(u, v))
    fail(ErrorCode::InvalidArgument, "duplicate edge " + std::to_string(u) +
                                         " " + std::to_string(v));
  rows_[u * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
  rows_[v * words_ + (u >> 6)] |= std::uint64_t{1} << (u & 63);
  adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
  adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
  ++edge_count_;
}

void Graph::set_color(Vertex v, std::uint32_t color) {
  check_vertex(v);
  colors_[v] = color;
}

bool Graph::colored() const noexcept {
  return std::any_of(colors_.begin(), colors_.end(),
                     [](std::uint32_t c) { return c != 0; });
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < size(); ++u)
    for (Vertex v : adj_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::permuted(std::span<const Vertex> perm) const {
  if (perm.size() != size())
    fail(ErrorCode::InvalidArgument, "permutation size mismatch");
  Graph out(size());
  for (auto [u, v] : edges()) out.add_edge(perm[u], perm[v]);
  for (Vertex v = 0; v < size(); ++v) out.set_color(perm[v], colors_[v]);
  return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> index(size(), kInfinite);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    check_vertex(vertices[i]);
    index[vertices[i]] = static_cast<Vertex>(i);
  }
  Graph out(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    out.set_color(static_cast<Vertex>(i), colors_[vertices[i]]);
    for (Vertex w : adj_[vertices[i]])
      if (index[w] != kInfinite && index[w] > i)
        out.add_edge(static_cast<Vertex>(i), index[w]);
  }
  return out;
}

bool operator==(const Graph& a, const Graph& b) {
  return a.adj_ == b.adj_ && a.colors_ == b.colors_;
}

Structure::Structure(Graph graph) : graph_(std::move(graph)) {}

Structure::Structure(Graph graph,
                     std::span<const std::array<Vertex, 3>> triples)
    : graph_(std::move(graph)), has_ternary_(true) {
  const std::size_t n = graph_.size();
  ternary_.assign((n * n * n + 63) / 64, 0);
  for (const auto& t : triples) {
    for (Vertex v : t)
      if (v >= n) fail(ErrorCode::InvalidArgument, "triple vertex out of range");
    const std::size_t bit =
        (static_cast<std::size_t>(t[0]) * n + t[1]) * n + t[2];
    ternary_[bit >> 6] |= std::uint64_t{1} << (bit & 63);
  }
}

Structure Structure::permuted(std::span<const Vertex> perm) const {
  Graph g = graph_.permuted(perm);
  if (!has_ternary_) return Structure(std::move(g));
  const std::size_t n = size();
  std::vector<std::array<Vertex, 3>> triples;
  for (Vertex x = 0; x < n; ++x)
    for (Vertex y = 0; y < n; ++y)
      for (Vertex z = 0; z < n; ++z)
        if (ternary(x, y, z)) triples.push_back({perm[x], perm[y], perm[z]});
  return Structure(std::move(g), triples);
}

namespace {

std::vector<char> membership(const Graph& g, std::span<const Vertex> set) {
  std::vector<char> in(g.size(), 0);
  for (Vertex v : set) {
    if (v >= g.size())
      fail(ErrorCode::InvalidArgument, "vertex set entry out of range");
    in[v] = 1;
  }
  return in;
}

// Vertices reachable from the seeds without entering blocked vertices.
std::vector<char> reach(const Graph& g, std::span<const Vertex> seeds,
                        const std::vector<char>& blocked) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Vertex> stack;
  for (Vertex s : seeds)
    if (!blocked[s] && !seen[s]) {
      seen[s] = 1;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    const Vertex u = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(u))
      if (!blocked[w] && !seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

}  // namespace

std::vector<VertexSet> flaps(const Graph& g, std::span<const Vertex> x) {
  const std::vector<char> removed = membership(g, x);
  std::vector<char> seen(g.size(), 0);
  std::vector<VertexSet> out;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (removed[s] || seen[s]) continue;
    VertexSet comp;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const Vertex u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (Vertex w : g.neighbors(u))
        if (!removed[w] && !seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

bool is_separator(const Graph& g, std::span<const Vertex> x) {
  for (const auto& flap : flaps(g, x))
    if (flap.size() * 2 > g.size()) return false;
  return true;
}

VertexSet odot(const Graph& g, std::span<const Vertex> a, Vertex v) {
  const std::vector<char> in_a = membership(g, a);
  if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex out of range");
  if (in_a[v]) fail(ErrorCode::Precondition, "odot requires v outside a");
  const Vertex seed[] = {v};
  const std::vector<char> flap = reach(g, seed, in_a);
  VertexSet out;
  for (Vertex u = 0; u < g.size(); ++u)
    if (in_a[u] || flap[u]) out.push_back(u);
  return out;
}

VertexSet ominus(const Graph& g, std::span<const Vertex> a,
                 std::span<const Vertex> c) {
  if (a.empty() || c.empty())
    fail(ErrorCode::Precondition, "ominus requires nonempty sets");
  const std::vector<char> in_a = membership(g, a);
  const std::vector<char> in_c = membership(g, c);
  for (Vertex v = 0; v < g.size(); ++v)
    if (in_a[v] && in_c[v])
      fail(ErrorCode::Precondition, "ominus requires disjoint sets");
  // x reaches a in g - c  <=>  x is reachable from a without entering c.
  const std::vector<char> near_a = reach(g, a, in_c);
  const std::vector<char> near_c = reach(g, c, in_a);
  VertexSet out;
  for (Vertex v = 0; v < g.size(); ++v)
    if (in_a[v] || in_c[v] || (near_a[v] && near_c[v])) out.push_back(v);
  return out;
}

std::vector<std::uint32_t> distances_from(const Graph& g, Vertex source) {
  if (source >= g.size()) fail(ErrorCode::InvalidArgument, "vertex out of range");
  std::vector<std::uint32_t> dist(g.size(), kInfinite);
  std::queue<Vertex> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop();
    for (Vertex w : g.neighbors(u))
      if (dist[w] == kInfinite) {
        dist[w] = dist[u] + 1;
        queue.push(w);
      }
  }
  return dist;
}

std::uint32_t distance(const Graph& g, Vertex u, Vertex v) {
  if (v >= g.size()) fail(ErrorCode::InvalidArgument, "vertex out of range");
  return distances_from(g, u)[v];
}

std::uint32_t diameter(const Graph& g) {
  std::uint32_t best = 0;
  for (Vertex u = 0; u < g.size(); ++u)
    for (std::uint32_t d : distances_from(g, u)) best = std::max(best, d);
  return best;
}

bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  const auto dist = distances_from(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::uint32_t d) { return d == kInfinite; });
}

std::vector<std::size_t> tree_path(const TreeDecomposition& td, std::size_t i,
                                   std::size_t j) {
  const std::size_t nodes = td.tree.size();
  std::vector<std::size_t> parent(nodes, nodes);
  std::vector<char> seen(nodes, 0);
  std::queue<std::size_t> queue;
  seen[i] = 1;
  queue.push(i);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    for (std::size_t w : td.tree[u])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        queue.push(w);
      }
  }
  if (!seen[j]) return {};
  std::vector<std::size_t> path{j};
  while (path.back() != i) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

TdValidation validate_tree_decomposition(const Graph& g,
                                         const TreeDecomposition& td) {
  TdValidation out;
  auto reject = [&](TdFailure f, std::string msg) {
    out.valid = false;
    out.failure = f;
    out.message = std::move(msg);
    return out;
  };
  const std::size_t nodes = td.bags.size();
  if (td.tree.size() != nodes)
    return reject(TdFailure::NotATree, "tree and bag counts differ");
  if (nodes == 0) {
    if (g.size() == 0) {
      out.valid = true;
      return out;
    }
    return reject(TdFailure::VertexUncovered, "no bags");
  }
  std::size_t tree_edges = 0;
  for (std::size_t u = 0; u < nodes; ++u)
    for (std::size_t w : td.tree[u]) {
      if (w >= nodes || w == u)
        return reject(TdFailure::NotATree, "bad tree edge");
      const auto& back = td.tree[w];
      if (std::find(back.begin(), back.end(), u) == back.end())
        return reject(TdFailure::NotATree, "tree adjacency not symmetric");
      ++tree_edges;
    }
  if (tree_edges != 2 * (nodes - 1))
    return reject(TdFailure::NotATree, "tree must have nodes-1 edges");
  for (std::size_t j = 1; j < nodes; ++j)
    if (tree_path(td, 0, j).empty())
      return reject(TdFailure::NotATree, "tree is disconnected");

  std::vector<std::vector<char>> in_bag(nodes, std::vector<char>(g.size(), 0));
  std::size_t width = 0;
  for (std::size_t i = 0; i < nodes; ++i) {
    for (Vertex v : td.bags[i]) {
      if (v >= g.size())
        return reject(TdFailure::BagOutOfRange,
                      "bag " + std::to_string(i) + " holds vertex " +
                          std::to_string(v));
      in_bag[i][v] = 1;
    }
    width = std::max(width, td.bags[i].size());
  }
  for (Vertex v = 0; v < g.size(); ++v) {
    bool covered = false;
    for (std::size_t i = 0; i < nodes && !covered; ++i) covered = in_bag[i][v];
    if (!covered)
      return reject(TdFailure::VertexUncovered,
                    "vertex uncovered: " + std::to_string(v));
  }
  for (auto [u, v] : g.edges()) {
    bool covered = false;
    for (std::size_t i = 0; i < nodes && !covered; ++i)
      covered = in_bag[i][u] && in_bag[i][v];
    if (!covered)
      return reject(TdFailure::EdgeUncovered,
                    "edge uncovered: " + std::to_string(u) + " " +
                        std::to_string(v));
  }
  // Bags containing v must form a subtree; equivalent to the path condition.
  for (Vertex v = 0; v < g.size(); ++v) {
    std::vector<std::size_t> holders;
    for (std::size_t i = 0; i < nodes; ++i)
      if (in_bag[i][v]) holders.push_back(i);
    for (std::size_t a = 1; a < holders.size(); ++a)
      for (std::size_t l : tree_path(td, holders[0], holders[a]))
        if (!in_bag[l][v])
          return reject(TdFailure::NotConnected,
                        "bags holding vertex " + std::to_string(v) +
                            " are not connected in the tree");
  }
  out.valid = true;
  out.width = width == 0 ? 0 : width - 1;
  return out;
}

TreeDecomposition restrict_decomposition(const TreeDecomposition& td,
                                         std::span<const Vertex> z) {
  TreeDecomposition out;
  out.tree = td.tree;
  VertexSet keep(z.begin(), z.end());
  std::sort(keep.begin(), keep.end());
  for (const auto& bag : td.bags) {
    VertexSet b;
    std::set_intersection(bag.begin(), bag.end(), keep.begin(), keep.end(),
                          std::back_inserter(b));
    out.bags.push_back(std::move(b));
  }
  return out;
}

Graph parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      ++line_no;
      const auto first = out.find_first_not_of(" \t\r");
      if (first == std::string::npos || out[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto bad = [&](const std::string& why) {
    fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + why);
  };
  if (!next_line(line)) fail(ErrorCode::Parse, "empty input");
  long long n = -1, m = -1;
  {
    std::istringstream hs(line);
    std::string extra;
    if (!(hs >> n >> m) || (hs >> extra) || n < 0 || m < 0)
      bad("expected header \"n m\"");
  }
  Graph g(static_cast<std::size_t>(n));
  long long seen_edges = 0;
  while (next_line(line)) {
    std::istringstream ls(line);
    std::string first;
    ls >> first;
    std::string extra;
    if (first == "c") {
      long long v = -1, c = -1;
      if (!(ls >> v >> c) || (ls >> extra) || v < 0 || v >= n || c < 0)
        bad("expected \"c v color\"");
      g.set_color(static_cast<Vertex>(v), static_cast<std::uint32_t>(c));
      continue;
    }
    long long u = -1, v = -1;
    try {
      std::size_t pos = 0;
      u = std::stoll(first, &pos);
      if (pos != first.size()) bad("malformed vertex id");
    } catch (const std::logic_error&) {
      bad("malformed vertex id");
    }
    if (!(ls >> v) || (ls >> extra)) bad("expected \"u v\"");
    if (u < 0 || v < 0 || u >= n || v >= n) bad("endpoint out of range");
    if (u == v) bad("self-loop");
    if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
      bad("duplicate edge");
    g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    ++seen_edges;
  }
  if (seen_edges != m)
    fail(ErrorCode::Parse, "header announces " + std::to_string(m) +
                               " edges, found " + std::to_string(seen_edges));
  return g;
}

Graph parse_edge_list(const std::string& text) {
  std::istringstream in(text);
  return parse_edge_list(in);
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << g.size() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  for (Vertex v = 0; v < g.size(); ++v)
    if (g.color(v) != 0) out << "c " << v << ' ' << g.color(v) << '\n';
  return out.str();
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  return parse_edge_list(in);
}

}  // namespace wliso
