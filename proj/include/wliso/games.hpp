#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wliso/graph.hpp"

namespace wliso::games {

enum class GameVariant { Plain, Counting };
const char* to_string(GameVariant v);

enum class Side { G, H };

/// Pebbled pairs (x in G, y in H); order and repetition are irrelevant.
using Placement = std::vector<std::pair<Vertex, Vertex>>;

struct GameLimits {
  std::size_t max_n_plain = 6;
  std::size_t max_n_counting = 5;
  unsigned max_k = 3;
};

struct DepthResult {
  /// nullopt = infinity (Duplicator survives every number of rounds).
  std::optional<std::uint32_t> value;
  unsigned k = 0;
  GameVariant variant = GameVariant::Plain;

  bool finite() const { return value.has_value(); }
  /// Decimal value or "∞".
  std::string to_string() const;
};

/// Exact solver for the k-pebble game on (G, H). Positions are sets of at
/// most k pebbled pairs, since pebbles are interchangeable once any of them
/// may be re-placed. The solver computes, for every position, the least
/// number of rounds in which Spoiler forces a non-partial-isomorphism.
class PebbleGame {
 public:
  PebbleGame(const Structure& g, const Structure& h, unsigned k,
             GameVariant variant, const GameLimits& limits = {},
             unsigned threads = 1);

  unsigned pebbles() const noexcept { return k_; }
  GameVariant variant() const noexcept { return variant_; }

  /// Equality, adjacency, colors and ternary facts all agree.
  bool partial_isomorphism(const Placement& p) const;

  /// Rounds Spoiler needs from position p; nullopt = never.
  std::optional<std::uint32_t> depth(const Placement& p = {}) const;

  /// Counting rounds: Spoiler lifts the pebble on `lifted` (or a free one),
  /// picks the set `a_set` on `side`; Duplicator answers with any equally
  /// large set; Spoiler pebbles some b in it; Duplicator answers in a_set.
  /// True when Spoiler wins within `rounds` rounds counting this one.
  /// Evaluated by enumerating Duplicator's set replies.
  bool set_move_wins(const Placement& p, std::optional<std::size_t> lifted,
                     Side side, const VertexSet& a_set, std::uint32_t rounds) const;

  /// Positions reachable by the composite move once Duplicator answered
  /// `b_set`: one entry per Spoiler choice b in b_set, listing the
  /// positions for each Duplicator answer a in a_set.
  std::vector<std::vector<Placement>> composite_successors(
      const Placement& p, std::optional<std::size_t> lifted, Side side,
      const VertexSet& a_set, const VertexSet& b_set) const;

 private:
  std::size_t encode(const Placement& p) const;
  std::size_t canonical(std::uint32_t* cells) const;
  bool partial_iso_cells(const std::uint32_t* cells, unsigned count) const;
  void solve(unsigned threads);

  Structure g_, h_;
  unsigned k_;
  GameVariant variant_;
  std::size_t cells_ = 0;  // 1 + |G||H|; cell 0 = pebble off the board
  std::vector<std::uint32_t> depth_;  // indexed by base-cells code
  std::vector<std::size_t> positions_;
};

inline constexpr std::uint32_t kNever = std::numeric_limits<std::uint32_t>::max();

/// Minimum number of rounds of the k-pebble game won by Spoiler from the
/// empty position: the k-variable distinguishing depth (plain) or its
/// counting-quantifier version.
DepthResult ef_depth(const Structure& g, const Structure& h, unsigned k,
                     GameVariant variant, const GameLimits& limits = {},
                     unsigned threads = 1);

struct BoundedUniverseDepth {
  /// Max of the pairwise depth over every H with |V(H)| <= |V(G)| + 1 not
  /// isomorphic to G. A lower estimate of the unrestricted maximum.
  std::optional<std::uint32_t> lower_estimate;
  std::size_t candidates = 0;
  std::size_t infinite = 0;
};
BoundedUniverseDepth bounded_universe_depth(const Graph& g, unsigned k,
                                            GameVariant variant,
                                            const GameLimits& limits = {},
                                            unsigned threads = 1);

struct HalvingMove {
  Side side = Side::G;
  Vertex vertex = 0;  // the midpoint pebbled by Spoiler
};

struct HalvingResult {
  std::uint32_t distance = 0;          // d(u, v) in G
  std::uint32_t bound = 0;             // ceil(log2 d(u, v))
  std::uint32_t worst_case_moves = 0;  // over every Duplicator reply
  bool wins_within_bound = false;
  /// Spoiler's moves when Duplicator always answers with the least vertex
  /// that keeps the game alive.
  std::vector<HalvingMove> principal_line;
};

/// Three-pebble midpoint strategy from u, v in G pebbled against u2, v2 in
/// H. Requires d(u, v) finite and d(u, v) != d(u2, v2). Every Duplicator
/// reply is explored, so the worst case is exact for this strategy.
HalvingResult halving_strategy(const Graph& g, const Graph& h, Vertex u, Vertex v,
                               Vertex u2, Vertex v2);

}  // namespace wliso::games
