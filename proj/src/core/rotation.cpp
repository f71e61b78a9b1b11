#include "wliso/rotation.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace wliso::rotation {

namespace {

bool adjacent(const Graph& g, Vertex x, Vertex y) {
  return x < g.size() && y < g.size() && g.has_edge(x, y);
}

std::string triple_str(const std::array<Vertex, 3>& t) {
  return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
         std::to_string(t[2]) + ")";
}

}  // namespace

RotationSystem::RotationSystem(const std::vector<std::vector<Vertex>>& orders) {
  const std::size_t n = orders.size();
  graph_ = Graph(n);
  for (Vertex x = 0; x < n; ++x) {
    std::set<Vertex> seen;
    for (Vertex y : orders[x]) {
      if (y >= n)
        fail(ErrorCode::InvalidArgument,
             "vertex " + std::to_string(x) + " lists out-of-range neighbor " +
                 std::to_string(y));
      if (y == x)
        fail(ErrorCode::InvalidArgument, "self-loop at " + std::to_string(x));
      if (!seen.insert(y).second)
        fail(ErrorCode::InvalidArgument,
             "vertex " + std::to_string(x) + " lists " + std::to_string(y) +
                 " twice");
      if (x < y) graph_.add_edge(x, y);
    }
  }
  for (Vertex x = 0; x < n; ++x) {
    if (orders[x].size() != graph_.degree(x))
      fail(ErrorCode::InvalidArgument,
           "neighbor lists are not symmetric at vertex " + std::to_string(x));
    for (Vertex y : orders[x])
      if (!graph_.has_edge(x, y))
        fail(ErrorCode::InvalidArgument,
             "neighbor lists are not symmetric at vertex " + std::to_string(x));
    const std::size_t d = orders[x].size();
    for (std::size_t i = 0; i < d; ++i)
      triples_.push_back({x, orders[x][i], orders[x][(i + 1) % d]});
  }
  std::sort(triples_.begin(), triples_.end());
  succ_.resize(n);
  for (const auto& t : triples_) succ_[t[0]].emplace(t[1], t[2]);
}

RotationSystem::RotationSystem(Graph graph,
                               std::vector<std::array<Vertex, 3>> triples)
    : graph_(std::move(graph)), triples_(std::move(triples)) {
  for (const auto& t : triples_)
    for (Vertex v : t)
      if (v >= graph_.size())
        fail(ErrorCode::InvalidArgument, "triple vertex out of range");
  std::sort(triples_.begin(), triples_.end());
  triples_.erase(std::unique(triples_.begin(), triples_.end()), triples_.end());
  succ_.resize(graph_.size());
  for (const auto& t : triples_) succ_[t[0]].emplace(t[1], t[2]);
}

Vertex RotationSystem::successor(Vertex x, Vertex y) const {
  if (x >= size()) fail(ErrorCode::InvalidArgument, "vertex out of range");
  auto it = succ_[x].find(y);
  if (it == succ_[x].end())
    fail(ErrorCode::Precondition, "no successor of " + std::to_string(y) +
                                      " around " + std::to_string(x));
  return it->second;
}

std::vector<Vertex> RotationSystem::cyclic_order(Vertex x) const {
  const auto nb = graph_.neighbors(x);
  std::vector<Vertex> out;
  if (nb.empty()) return out;
  Vertex y = nb.front();
  do {
    out.push_back(y);
    y = successor(x, y);
  } while (y != nb.front() && out.size() <= nb.size());
  return out;
}

Structure RotationSystem::as_structure() const {
  return Structure(graph_, triples_);
}

RotationSystem RotationSystem::permuted(std::span<const Vertex> perm) const {
  std::vector<std::array<Vertex, 3>> t;
  t.reserve(triples_.size());
  for (const auto& tr : triples_) t.push_back({perm[tr[0]], perm[tr[1]], perm[tr[2]]});
  return RotationSystem(graph_.permuted(perm), std::move(t));
}

RotationSystem RotationSystem::mirrored() const {
  std::vector<std::array<Vertex, 3>> t;
  t.reserve(triples_.size());
  for (const auto& tr : triples_) t.push_back({tr[0], tr[2], tr[1]});
  return RotationSystem(graph_, std::move(t));
}

ValidationReport validate(const RotationSystem& r) {
  ValidationReport rep;
  auto violation = [&](std::string msg) {
    rep.valid = false;
    rep.violations.push_back(std::move(msg));
  };
  const Graph& g = r.graph();
  const std::size_t n = g.size();
  std::vector<std::map<Vertex, std::vector<Vertex>>> out(n), in(n);
  for (const auto& t : r.triples()) {
    if (!adjacent(g, t[0], t[1]) || !adjacent(g, t[0], t[2])) {
      violation("condition 1: " + triple_str(t) + " leaves the neighborhood of " +
                std::to_string(t[0]));
      continue;
    }
    out[t[0]][t[1]].push_back(t[2]);
    in[t[0]][t[2]].push_back(t[1]);
  }
  for (Vertex x = 0; x < n; ++x) {
    bool functional = true;
    for (Vertex y : g.neighbors(x)) {
      const auto o = out[x].find(y);
      const auto i = in[x].find(y);
      if (o == out[x].end() || o->second.size() != 1 || i == in[x].end() ||
          i->second.size() != 1) {
        functional = false;
        violation("condition 2: T_" + std::to_string(x) +
                  " is not a permutation at neighbor " + std::to_string(y));
      }
    }
    if (!functional || g.degree(x) == 0) continue;
    // Single cycle: walking from one neighbor must visit all of them.
    const Vertex start = g.neighbors(x).front();
    std::size_t steps = 0;
    Vertex y = start;
    do {
      y = out[x][y].front();
      ++steps;
    } while (y != start && steps <= g.degree(x));
    if (steps != g.degree(x))
      violation("condition 2: T_" + std::to_string(x) +
                " splits into more than one cycle");
  }
  if (!is_connected(g)) violation("graph is not connected");
  return rep;
}

std::uint32_t local_coord(const RotationSystem& r, Vertex x, Vertex y,
                          Vertex z) {
  const Graph& g = r.graph();
  if (!adjacent(g, x, y) || !adjacent(g, x, z))
    fail(ErrorCode::Precondition, "local_coord needs y, z in the neighborhood of x");
  std::uint32_t steps = 0;
  Vertex cur = y;
  while (cur != z) {
    cur = r.successor(x, cur);
    if (++steps > g.degree(x))
      fail(ErrorCode::Precondition, "T_x is not a cycle through z");
  }
  return steps;
}

std::vector<CoordinateVector> global_coords(const RotationSystem& r, Vertex a,
                                            Vertex b) {
  const Graph& g = r.graph();
  if (!adjacent(g, a, b))
    fail(ErrorCode::Precondition, "coordinate origin must be an edge");
  const auto dist = distances_from(g, a);
  const std::size_t n = g.size();
  std::vector<Vertex> by_layer(n);
  for (Vertex v = 0; v < n; ++v) {
    if (dist[v] == kInfinite)
      fail(ErrorCode::Precondition, "rotation system graph is disconnected");
    by_layer[v] = v;
  }
  std::stable_sort(by_layer.begin(), by_layer.end(),
                   [&](Vertex x, Vertex y) { return dist[x] < dist[y]; });
  std::vector<CoordinateVector> out(n);
  std::vector<Vertex> prev(n, a);
  for (Vertex v : by_layer) {
    CoordinateVector& cv = out[v];
    cv.origin_a = a;
    cv.origin_b = b;
    cv.target = v;
    if (v == a) {
      cv.path = {a};
      continue;
    }
    if (dist[v] == 1) {
      cv.coords = {local_coord(r, a, b, v)};
      cv.path = {a, v};
      continue;
    }
    bool have = false;
    for (Vertex u : g.neighbors(v)) {
      if (dist[u] + 1 != dist[v]) continue;
      std::vector<std::uint32_t> cand = out[u].coords;
      cand.push_back(local_coord(r, u, prev[u], v));
      if (!have || cand < cv.coords) {
        have = true;
        cv.coords = std::move(cand);
        prev[v] = u;
      }
    }
    cv.path = out[prev[v]].path;
    cv.path.push_back(v);
  }
  return out;
}

namespace {

std::optional<std::vector<Vertex>> match_from(
    const RotationSystem& r1, const std::map<std::vector<std::uint32_t>, Vertex>& c1,
    const RotationSystem& r2, Vertex a2, Vertex b2) {
  const auto c2 = global_coords(r2, a2, b2);
  const std::size_t n = r1.size();
  std::vector<Vertex> f(n, kInfinite);
  std::vector<char> hit(n, 0);
  for (Vertex y = 0; y < n; ++y) {
    auto it = c1.find(c2[y].coords);
    if (it == c1.end() || hit[y]) return std::nullopt;
    f[it->second] = y;
    hit[y] = 1;
  }
  for (auto [u, v] : r1.graph().edges())
    if (!r2.graph().has_edge(f[u], f[v])) return std::nullopt;
  for (const auto& t : r1.triples())
    if (r2.successor(f[t[0]], f[t[1]]) != f[t[2]]) return std::nullopt;
  return f;
}

}  // namespace

IsoResult iso_decide(const RotationSystem& r1, const RotationSystem& r2,
                     unsigned threads) {
  IsoResult res;
  const std::size_t n = r1.size();
  if (n != r2.size() || r1.graph().edge_count() != r2.graph().edge_count() ||
      r1.triples().size() != r2.triples().size())
    return res;
  if (r1.graph().edge_count() == 0) {
    // Connected and edgeless: at most one vertex.
    res.isomorphic = true;
    for (Vertex v = 0; v < n; ++v) res.map.push_back(v);
    return res;
  }
  const Vertex a = r1.graph().edges().front().first;
  const Vertex b = r1.graph().neighbors(a).front();
  std::map<std::vector<std::uint32_t>, Vertex> c1;
  for (const auto& cv : global_coords(r1, a, b)) c1.emplace(cv.coords, cv.target);

  std::vector<std::pair<Vertex, Vertex>> origins;
  for (auto [u, v] : r2.graph().edges()) {
    origins.emplace_back(u, v);
    origins.emplace_back(v, u);
  }
  std::sort(origins.begin(), origins.end());
  const std::size_t block = std::max<std::size_t>(1, threads) * 4;
  for (std::size_t start = 0; start < origins.size(); start += block) {
    const std::size_t end = std::min(origins.size(), start + block);
    std::vector<std::optional<std::vector<Vertex>>> found(end - start);
    parallel_for(end - start, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i)
        found[i] = match_from(r1, c1, r2, origins[start + i].first,
                              origins[start + i].second);
    });
    for (std::size_t i = 0; i < found.size(); ++i)
      if (found[i]) {
        res.isomorphic = true;
        res.map = std::move(*found[i]);
        res.origin = origins[start + i];
        return res;
      }
  }
  return res;
}

SplitWitness coordinate_split_check(const RotationSystem& r1, Vertex a, Vertex b,
                               Vertex v, const RotationSystem& r2, Vertex a2,
                               Vertex b2, Vertex v2, std::uint32_t split) {
  if (v >= r1.size() || v2 >= r2.size())
    fail(ErrorCode::InvalidArgument, "vertex out of range");
  const auto c1 = global_coords(r1, a, b);
  const auto c2 = global_coords(r2, a2, b2);
  const auto& p = c1[v];
  const auto& p2 = c2[v2];
  if (p.coords.size() != p2.coords.size())
    fail(ErrorCode::Precondition, "d(a,v) and d(a',v') differ");
  if (p.coords == p2.coords)
    fail(ErrorCode::Precondition, "coordinates of v and v' coincide");
  if (split < 1 || split >= p.coords.size())
    fail(ErrorCode::Precondition, "split must satisfy 1 <= split < d(a,v)");
  SplitWitness w;
  w.u = p.path[split];
  w.w = p.path[split - 1];
  w.u2 = p2.path[split];
  w.w2 = p2.path[split - 1];
  if (c1[w.u].coords != c2[w.u2].coords)
    fail(ErrorCode::Precondition, "prefix coordinates C(u) and C(u') differ");
  w.prefix = c1[w.u].coords;
  w.suffix = global_coords(r1, w.u, w.w)[v].coords;
  w.suffix2 = global_coords(r2, w.u2, w.w2)[v2].coords;
  auto concat = [](std::vector<std::uint32_t> x, const std::vector<std::uint32_t>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  w.decomposition_holds = concat(w.prefix, w.suffix) == p.coords &&
                          concat(w.prefix, w.suffix2) == p2.coords;
  w.suffixes_differ = w.suffix != w.suffix2;
  return w;
}

FaceTrace face_walk(const RotationSystem& r) {
  const Graph& g = r.graph();
  FaceTrace out;
  const auto edges = g.edges();
  if (edges.empty()) {
    for (Vertex v = 0; v < g.size(); ++v) out.faces.push_back({v});
  } else {
    std::set<std::pair<Vertex, Vertex>> used;
    std::vector<std::pair<Vertex, Vertex>> darts;
    for (auto [u, v] : edges) {
      darts.emplace_back(u, v);
      darts.emplace_back(v, u);
    }
    std::sort(darts.begin(), darts.end());
    for (auto start : darts) {
      if (used.count(start)) continue;
      std::vector<Vertex> face;
      auto d = start;
      do {
        used.insert(d);
        face.push_back(d.first);
        d = {d.second, r.successor(d.second, d.first)};
      } while (d != start);
      out.faces.push_back(std::move(face));
    }
  }
  out.euler_characteristic = static_cast<std::int64_t>(g.size()) -
                             static_cast<std::int64_t>(edges.size()) +
                             static_cast<std::int64_t>(out.faces.size());
  return out;
}

RotationSystem parse_rotation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<long long, std::vector<Vertex>> lists;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    auto bad = [&](const std::string& why) {
      fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + why);
    };
    if (colon == std::string::npos) bad("expected \"v: w1 ... wd\"");
    long long v = -1;
    {
      std::istringstream head(line.substr(0, colon));
      std::string extra;
      if (!(head >> v) || (head >> extra) || v < 0) bad("malformed vertex id");
    }
    if (lists.count(v)) bad("vertex " + std::to_string(v) + " listed twice");
    std::istringstream rest(line.substr(colon + 1));
    std::vector<Vertex> nb;
    std::string tok;
    while (rest >> tok) {
      long long w = -1;
      try {
        std::size_t pos = 0;
        w = std::stoll(tok, &pos);
        if (pos != tok.size() || w < 0) bad("malformed neighbor id");
      } catch (const std::logic_error&) {
        bad("malformed neighbor id");
      }
      nb.push_back(static_cast<Vertex>(w));
    }
    lists.emplace(v, std::move(nb));
  }
  std::vector<std::vector<Vertex>> orders(lists.size());
  for (auto& [v, nb] : lists) {
    if (v >= static_cast<long long>(lists.size()))
      fail(ErrorCode::Parse, "vertex ids must be 0..n-1");
    orders[static_cast<std::size_t>(v)] = std::move(nb);
  }
  RotationSystem r;
  try {
    r = RotationSystem(orders);
  } catch (const Error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  const auto rep = validate(r);
  if (!rep.valid) fail(ErrorCode::Parse, "invalid rotation system: " + rep.violations.front());
  return r;
}

RotationSystem load_rotation(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_rotation(ss.str());
}

std::string write_rotation(const RotationSystem& r) {
  std::ostringstream out;
  for (Vertex x = 0; x < r.size(); ++x) {
    out << x << ':';
    for (Vertex y : r.cyclic_order(x)) out << ' ' << y;
    out << '\n';
  }
  return out.str();
}

}  // namespace wliso::rotation
