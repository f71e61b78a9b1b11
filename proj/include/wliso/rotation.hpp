#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wliso/graph.hpp"

namespace wliso::rotation {

/// Graph plus, at every vertex x, a successor map on Γ(x): T(x, y, z) holds
/// iff succ_x(y) = z. A valid system has each succ_x a single directed cycle
/// through all of Γ(x) and a connected graph.
class RotationSystem {
 public:
  RotationSystem() = default;
  /// orders[x] lists Γ(x) in clockwise order; the graph is derived from the
  /// lists and must be symmetric.
  explicit RotationSystem(const std::vector<std::vector<Vertex>>& orders);
  /// Arbitrary (possibly invalid) triples over an existing graph.
  RotationSystem(Graph graph, std::vector<std::array<Vertex, 3>> triples);

  const Graph& graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return graph_.size(); }
  const std::vector<std::array<Vertex, 3>>& triples() const noexcept {
    return triples_;
  }

  /// succ_x(y); throws Precondition when T_x is not a function at y.
  Vertex successor(Vertex x, Vertex y) const;
  /// Γ(x) in cyclic order starting at the least neighbor.
  std::vector<Vertex> cyclic_order(Vertex x) const;

  /// The ternary structure (G, T) consumed by the WL engine and games.
  Structure as_structure() const;
  RotationSystem permuted(std::span<const Vertex> perm) const;
  /// Every T_x reversed (mirror image).
  RotationSystem mirrored() const;

 private:
  Graph graph_;
  std::vector<std::array<Vertex, 3>> triples_;  // sorted
  std::vector<std::map<Vertex, Vertex>> succ_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
};

ValidationReport validate(const RotationSystem& r);

/// Steps from y to z along T_x; c_xy(y) = 0.
std::uint32_t local_coord(const RotationSystem& r, Vertex x, Vertex y, Vertex z);

struct CoordinateVector {
  Vertex origin_a = 0;
  Vertex origin_b = 0;
  Vertex target = 0;
  std::vector<std::uint32_t> coords;
  /// The extreme-left shortest path a = path[0], ..., path.back() = target.
  std::vector<Vertex> path;
};

/// C_ab(v) for every vertex v; requires {a, b} ∈ E and a valid system.
std::vector<CoordinateVector> global_coords(const RotationSystem& r, Vertex a,
                                            Vertex b);

struct IsoResult {
  bool isomorphic = false;
  /// map[x] = image of x in the second system.
  std::vector<Vertex> map;
  /// Origin (a', b') in the second system that produced the match.
  std::optional<std::pair<Vertex, Vertex>> origin;
};

/// Coordinate matching: fix an ordered edge (a, b) of r1, try every ordered
/// edge of r2 in sorted order, and accept the first coordinate-induced
/// bijection that preserves adjacency and T.
IsoResult iso_decide(const RotationSystem& r1, const RotationSystem& r2,
                     unsigned threads = 1);

struct SplitWitness {
  Vertex u = 0, w = 0, u2 = 0, w2 = 0;
  std::vector<std::uint32_t> prefix;      // C_ab(u) = C_a'b'(u')
  std::vector<std::uint32_t> suffix;      // C_uw(v)
  std::vector<std::uint32_t> suffix2;     // C_u'w'(v')
  bool decomposition_holds = false;       // both C = prefix ++ suffix
  bool suffixes_differ = false;
};

/// Picks u, u' at distance `split` from a, a' along P_v, P_v' and returns the
/// coordinate decomposition around them. Throws Precondition when the
/// hypotheses (adjacent origins, equal distances, distinct coordinates,
/// equal prefixes, 1 <= split < d) fail.
SplitWitness coordinate_split_check(const RotationSystem& r1, Vertex a, Vertex b,
                               Vertex v, const RotationSystem& r2, Vertex a2,
                               Vertex b2, Vertex v2, std::uint32_t split);

struct FaceTrace {
  std::vector<std::vector<Vertex>> faces;  // vertex sequence of each walk
  std::int64_t euler_characteristic = 0;   // n - m + f
};

/// Face tracing: the dart (u, v) is followed by (v, succ_v(u)).
FaceTrace face_walk(const RotationSystem& r);

/// Text format: one line "v: w1 w2 ... wd" per vertex, neighbors listed
/// clockwise. Loading validates strictly.
RotationSystem parse_rotation(const std::string& text);
RotationSystem load_rotation(const std::string& path);
std::string write_rotation(const RotationSystem& r);

}  // namespace wliso::rotation
