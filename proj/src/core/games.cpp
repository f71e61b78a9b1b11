#include "wliso/games.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "wliso/generators.hpp"

namespace wliso::games {

const char* to_string(GameVariant v) {
  return v == GameVariant::Plain ? "plain" : "counting";
}

std::string DepthResult::to_string() const {
  return value ? std::to_string(*value) : std::string("∞");
}

PebbleGame::PebbleGame(const Structure& g, const Structure& h, unsigned k,
                       GameVariant variant, const GameLimits& limits,
                       unsigned threads)
    : g_(g), h_(h), k_(k), variant_(variant) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "need at least one pebble");
  const std::size_t max_n =
      variant == GameVariant::Plain ? limits.max_n_plain : limits.max_n_counting;
  if (k > limits.max_k || g.size() > max_n || h.size() > max_n || k > 16 ||
      (variant == GameVariant::Counting && std::max(g.size(), h.size()) > 20))
    fail(ErrorCode::BudgetExceeded,
         std::string(games::to_string(variant)) + " game limited to n <= " +
             std::to_string(max_n) + ", k <= " + std::to_string(limits.max_k));
  cells_ = 1 + g.size() * h.size();
  std::size_t table = 1;
  for (unsigned i = 0; i < k; ++i) table *= cells_;
  depth_.assign(table, kNever);
  solve(threads);
}

std::size_t PebbleGame::canonical(std::uint32_t* cells) const {
  std::sort(cells, cells + k_);
  for (unsigned i = 1; i < k_; ++i)
    if (cells[i] != 0 && cells[i] == cells[i - 1]) cells[i - 1] = 0;
  std::sort(cells, cells + k_);
  std::size_t code = 0;
  for (unsigned i = 0; i < k_; ++i) code = code * cells_ + cells[i];
  return code;
}

std::size_t PebbleGame::encode(const Placement& p) const {
  std::vector<std::uint32_t> cells(k_, 0);
  Placement sorted = p;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  if (sorted.size() > k_)
    fail(ErrorCode::InvalidArgument, "more pebbled pairs than pebbles");
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto [x, y] = sorted[i];
    if (x >= g_.size() || y >= h_.size())
      fail(ErrorCode::InvalidArgument, "pebbled vertex out of range");
    cells[i] = 1 + x * static_cast<std::uint32_t>(h_.size()) + y;
  }
  return canonical(cells.data());
}

bool PebbleGame::partial_iso_cells(const std::uint32_t* cells, unsigned count) const {
  const std::uint32_t nh = static_cast<std::uint32_t>(h_.size());
  Vertex xs[16], ys[16];
  unsigned m = 0;
  for (unsigned i = 0; i < count; ++i)
    if (cells[i] != 0) {
      xs[m] = (cells[i] - 1) / nh;
      ys[m] = (cells[i] - 1) % nh;
      ++m;
    }
  const Graph& gg = g_.graph();
  const Graph& hh = h_.graph();
  for (unsigned i = 0; i < m; ++i) {
    if (gg.color(xs[i]) != hh.color(ys[i])) return false;
    for (unsigned j = 0; j < m; ++j) {
      if ((xs[i] == xs[j]) != (ys[i] == ys[j])) return false;
      if (gg.has_edge(xs[i], xs[j]) != hh.has_edge(ys[i], ys[j])) return false;
      if (g_.has_ternary() || h_.has_ternary())
        for (unsigned l = 0; l < m; ++l)
          if (g_.ternary(xs[i], xs[j], xs[l]) != h_.ternary(ys[i], ys[j], ys[l]))
            return false;
    }
  }
  return true;
}

bool PebbleGame::partial_isomorphism(const Placement& p) const {
  const std::size_t code = encode(p);
  std::vector<std::uint32_t> cells(k_);
  std::size_t rest = code;
  for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
    cells[i] = static_cast<std::uint32_t>(rest % cells_);
    rest /= cells_;
  }
  return partial_iso_cells(cells.data(), k_);
}

void PebbleGame::solve(unsigned threads) {
  // Canonical codes: zeros first, then strictly increasing occupied cells.
  std::vector<std::uint32_t> cur(k_);
  std::function<void(unsigned, std::uint32_t)> gen = [&](unsigned i, std::uint32_t lo) {
    if (i == k_) {
      std::size_t code = 0;
      for (unsigned j = 0; j < k_; ++j) code = code * cells_ + cur[j];
      positions_.push_back(code);
      return;
    }
    if (lo == 0) {
      cur[i] = 0;
      gen(i + 1, 0);
    }
    for (std::uint32_t c = std::max<std::uint32_t>(lo, 1); c < cells_; ++c) {
      cur[i] = c;
      gen(i + 1, c + 1);
    }
  };
  gen(0, 0);

  auto decode = [&](std::size_t code, std::uint32_t* cells) {
    for (int i = static_cast<int>(k_) - 1; i >= 0; --i) {
      cells[i] = static_cast<std::uint32_t>(code % cells_);
      code /= cells_;
    }
  };
  for (std::size_t code : positions_) {
    std::uint32_t cells[16];
    decode(code, cells);
    if (!partial_iso_cells(cells, k_)) depth_[code] = 0;
  }

  const std::size_t ng = g_.size(), nh = h_.size();
  for (std::uint32_t round = 1;; ++round) {
    const std::vector<std::uint32_t>& prev = depth_;
    std::vector<std::uint32_t> next = depth_;
    auto won = [&](const std::uint32_t* base, unsigned free_slot, Vertex x, Vertex y) {
      std::uint32_t cells[16];
      std::copy(base, base + k_, cells);
      cells[free_slot] = 1 + x * static_cast<std::uint32_t>(nh) + y;
      return prev[canonical(cells)] < round;
    };
    auto spoiler_wins = [&](const std::uint32_t* pos) {
      // Lift each occupied pebble in turn, or use a free one.
      for (unsigned lift = 0; lift < k_; ++lift) {
        if (lift > 0 && pos[lift] == 0) continue;
        std::uint32_t base[16];
        std::copy(pos, pos + k_, base);
        base[lift] = 0;
        if (variant_ == GameVariant::Plain) {
          for (Vertex x = 0; x < ng; ++x) {
            bool all = true;
            for (Vertex y = 0; y < nh && all; ++y) all = won(base, lift, x, y);
            if (all) return true;
          }
          for (Vertex y = 0; y < nh; ++y) {
            bool all = true;
            for (Vertex x = 0; x < ng && all; ++x) all = won(base, lift, x, y);
            if (all) return true;
          }
          continue;
        }
        // Set move on either side: Spoiler wins with A iff fewer than |A|
        // replies b still have some Duplicator answer a in A.
        for (int side = 0; side < 2; ++side) {
          const std::size_t na = side == 0 ? ng : nh;
          const std::size_t nb = side == 0 ? nh : ng;
          std::uint32_t safe[32] = {};
          for (Vertex a = 0; a < na; ++a)
            for (Vertex b = 0; b < nb; ++b) {
              const bool w = side == 0 ? won(base, lift, a, b) : won(base, lift, b, a);
              if (!w) safe[a] |= 1U << b;
            }
          std::vector<std::uint32_t> covered(1U << na, 0);
          for (std::uint32_t set = 1; set < (1U << na); ++set) {
            const unsigned low = static_cast<unsigned>(std::countr_zero(set));
            covered[set] = covered[set & (set - 1)] | safe[low];
            if (std::popcount(covered[set]) < std::popcount(set)) return true;
          }
        }
      }
      return false;
    };
    std::vector<char> changed_flag(positions_.size(), 0);
    parallel_for(positions_.size(), threads, [&](std::size_t lo, std::size_t hi) {
      std::uint32_t cells[16];
      for (std::size_t i = lo; i < hi; ++i) {
        const std::size_t code = positions_[i];
        if (prev[code] != kNever) continue;
        decode(code, cells);
        if (spoiler_wins(cells)) {
          next[code] = round;
          changed_flag[i] = 1;
        }
      }
    });
    depth_ = std::move(next);
    if (std::none_of(changed_flag.begin(), changed_flag.end(), [](char c) { return c; }))
      break;
  }
}

std::optional<std::uint32_t> PebbleGame::depth(const Placement& p) const {
  const std::uint32_t d = depth_[encode(p)];
  if (d == kNever) return std::nullopt;
  return d;
}

namespace {

Placement without(const Placement& p, std::optional<std::size_t> lifted) {
  Placement base = p;
  if (lifted) {
    if (*lifted >= p.size()) fail(ErrorCode::InvalidArgument, "lifted pebble index out of range");
    base.erase(base.begin() + static_cast<std::ptrdiff_t>(*lifted));
  }
  return base;
}

std::pair<Vertex, Vertex> oriented(Side side, Vertex a, Vertex b) {
  return side == Side::G ? std::pair{a, b} : std::pair{b, a};
}

}  // namespace

std::vector<std::vector<Placement>> PebbleGame::composite_successors(
    const Placement& p, std::optional<std::size_t> lifted, Side side,
    const VertexSet& a_set, const VertexSet& b_set) const {
  if (a_set.size() != b_set.size())
    fail(ErrorCode::InvalidArgument, "Duplicator's set must match |A|");
  const Placement base = without(p, lifted);
  Placement dedup = base;
  std::sort(dedup.begin(), dedup.end());
  dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
  if (dedup.size() >= k_) fail(ErrorCode::Precondition, "no free pebble; lift one");
  std::vector<std::vector<Placement>> out;
  for (Vertex b : b_set) {
    std::vector<Placement> row;
    for (Vertex a : a_set) {
      Placement next = base;
      next.push_back(oriented(side, a, b));
      row.push_back(std::move(next));
    }
    out.push_back(std::move(row));
  }
  return out;
}

bool PebbleGame::set_move_wins(const Placement& p, std::optional<std::size_t> lifted,
                               Side side, const VertexSet& a_set,
                               std::uint32_t rounds) const {
  if (a_set.empty()) fail(ErrorCode::InvalidArgument, "Spoiler's set must be nonempty");
  if (!partial_isomorphism(p)) return true;
  if (rounds == 0) return false;
  const std::size_t other = side == Side::G ? h_.size() : g_.size();
  if (a_set.size() > other) return true;
  const Placement base = without(p, lifted);
  // Every Duplicator reply B of size |A|, as an increasing index vector.
  std::vector<Vertex> b_set(a_set.size());
  std::iota(b_set.begin(), b_set.end(), 0U);
  while (true) {
    const auto rows = composite_successors(base, std::nullopt, side, a_set,
                                           VertexSet(b_set.begin(), b_set.end()));
    bool spoiler_has_b = false;
    for (const auto& row : rows) {
      bool all = true;
      for (const Placement& q : row) {
        const auto d = depth(q);
        all = all && d && *d + 1 <= rounds;
      }
      if (all) {
        spoiler_has_b = true;
        break;
      }
    }
    if (!spoiler_has_b) return false;
    // Next combination.
    std::size_t i = b_set.size();
    while (i > 0 && b_set[i - 1] == other - b_set.size() + i - 1) --i;
    if (i == 0) return true;
    ++b_set[i - 1];
    for (std::size_t j = i; j < b_set.size(); ++j) b_set[j] = b_set[j - 1] + 1;
  }
}

DepthResult ef_depth(const Structure& g, const Structure& h, unsigned k,
                     GameVariant variant, const GameLimits& limits, unsigned threads) {
  const PebbleGame game(g, h, k, variant, limits, threads);
  DepthResult r;
  r.value = game.depth();
  r.k = k;
  r.variant = variant;
  return r;
}

BoundedUniverseDepth bounded_universe_depth(const Graph& g, unsigned k,
                                            GameVariant variant,
                                            const GameLimits& limits, unsigned threads) {
  if (g.colored()) fail(ErrorCode::Precondition, "bounded universe covers uncolored graphs");
  const std::size_t max_n =
      variant == GameVariant::Plain ? limits.max_n_plain : limits.max_n_counting;
  if (g.size() + 1 > max_n)
    fail(ErrorCode::BudgetExceeded, "bounded universe needs |V(G)| + 1 <= " +
                                        std::to_string(max_n));
  BoundedUniverseDepth out;
  std::uint32_t best = 0;
  for (std::size_t m = 0; m <= g.size() + 1; ++m)
    for (const Graph& h : gen::all_graphs(m)) {
      if (m == g.size() && gen::brute_force_iso(g, h, max_n)) continue;
      ++out.candidates;
      const auto d = ef_depth(g, h, k, variant, limits, threads).value;
      if (!d)
        ++out.infinite;
      else
        best = std::max(best, *d);
    }
  if (out.infinite == 0 && out.candidates > 0) out.lower_estimate = best;
  return out;
}

namespace {

struct HalvingSearch {
  const Graph& g;
  const Graph& h;
  std::vector<std::vector<std::uint32_t>> dg, dh;

  bool partial_iso(std::span<const Vertex> xs, std::span<const Vertex> ys) const {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (g.color(xs[i]) != h.color(ys[i])) return false;
      for (std::size_t j = 0; j < xs.size(); ++j) {
        if ((xs[i] == xs[j]) != (ys[i] == ys[j])) return false;
        if (g.has_edge(xs[i], xs[j]) != h.has_edge(ys[i], ys[j])) return false;
      }
    }
    return true;
  }

  // Spoiler's midpoint on the side with the smaller distance.
  HalvingMove choose(Vertex gu, Vertex gv, Vertex hu, Vertex hv) const {
    const std::uint32_t a = dg[gu][gv], b = dh[hu][hv];
    const bool on_g = a < b;
    const auto& d = on_g ? dg : dh;
    const Vertex s = on_g ? gu : hu, t = on_g ? gv : hv;
    const std::uint32_t total = on_g ? a : b;
    const std::uint32_t half = total / 2;
    const std::size_t n = on_g ? g.size() : h.size();
    for (Vertex w = 0; w < n; ++w)
      if (d[s][w] == half && d[w][t] == total - half)
        return {on_g ? Side::G : Side::H, w};
    fail(ErrorCode::Internal, "no midpoint on a shortest path");
  }

  // Moves Spoiler needs against the worst reply.
  std::uint32_t play(Vertex gu, Vertex gv, Vertex hu, Vertex hv,
                     std::vector<HalvingMove>* line) const {
    const Vertex xs[] = {gu, gv}, ys[] = {hu, hv};
    if (!partial_iso(xs, ys)) return 0;
    const HalvingMove move = choose(gu, gv, hu, hv);
    if (line) line->push_back(move);
    const std::size_t replies = move.side == Side::G ? h.size() : g.size();
    std::uint32_t worst = 1;
    bool line_taken = false;
    for (Vertex r = 0; r < replies; ++r) {
      const Vertex gw = move.side == Side::G ? move.vertex : r;
      const Vertex hw = move.side == Side::G ? r : move.vertex;
      const Vertex xs3[] = {gu, gv, gw}, ys3[] = {hu, hv, hw};
      if (!partial_iso(xs3, ys3)) continue;
      std::vector<HalvingMove>* sub = nullptr;
      if (line && !line_taken) {
        sub = line;
        line_taken = true;
      }
      const std::uint32_t cost =
          dg[gu][gw] != dh[hu][hw] ? play(gu, gw, hu, hw, sub) : play(gw, gv, hw, hv, sub);
      worst = std::max(worst, 1 + cost);
    }
    return worst;
  }
};

std::uint32_t ceil_log2(std::uint32_t d) {
  std::uint32_t b = 0;
  while ((1ULL << b) < d) ++b;
  return b;
}

}  // namespace

HalvingResult halving_strategy(const Graph& g, const Graph& h, Vertex u, Vertex v,
                               Vertex u2, Vertex v2) {
  if (u >= g.size() || v >= g.size() || u2 >= h.size() || v2 >= h.size())
    fail(ErrorCode::InvalidArgument, "pebbled vertex out of range");
  HalvingSearch search{g, h, {}, {}};
  for (Vertex x = 0; x < g.size(); ++x) search.dg.push_back(distances_from(g, x));
  for (Vertex x = 0; x < h.size(); ++x) search.dh.push_back(distances_from(h, x));
  HalvingResult out;
  out.distance = search.dg[u][v];
  if (out.distance == kInfinite)
    fail(ErrorCode::Precondition, "halving needs d(u, v) finite");
  if (out.distance == search.dh[u2][v2])
    fail(ErrorCode::Precondition, "halving needs d(u, v) != d(u', v')");
  out.bound = ceil_log2(out.distance);
  out.worst_case_moves = search.play(u, v, u2, v2, &out.principal_line);
  out.wins_within_bound = out.worst_case_moves <= out.bound;
  return out;
}

}  // namespace wliso::games
