#pragma once

#include <optional>
#include <vector>

#include "wliso/graph.hpp"
#include "wliso/rotation.hpp"

namespace wliso::gen {

/// Exact isomorphism test by backtracking over bijections. Candidates are
/// pruned by degree and color only; adjacency (and T) are checked against
/// every previously mapped vertex. Returns the witness map on success.
std::optional<std::vector<Vertex>> brute_force_iso(const Structure& g,
                                                   const Structure& h,
                                                   std::size_t max_vertices = 10);

/// CFI graph over a connected base. Every base vertex v of degree d becomes
/// 2^(d-1) vertices m(v, S), one per even subset S of its incident edges,
/// colored v + 1. For a base edge e = {v, w}, m(v, S) ~ m(w, T) iff
/// [e in S] == [e in T], or != when e is twisted.
Graph gen_cfi(const Graph& base, bool twist);
/// Same construction with an explicit set of twisted base edges.
Graph gen_cfi_twisted(const Graph& base,
                      std::span<const std::pair<Vertex, Vertex>> twisted);

struct PartialKTree {
  Graph graph;
  TreeDecomposition decomposition;
};

/// k-tree by simplex extension (start from K_{k+1}, attach each new vertex
/// to a random k-clique of an existing bag), then each edge is kept with
/// probability keep. With connected = true the first edge attaching each new
/// vertex is always kept.
PartialKTree gen_partial_ktree(std::size_t n, std::size_t k, std::uint64_t seed,
                               double keep = 0.7, bool connected = true);
/// Uniform labeled tree from a random Prüfer sequence.
Graph gen_tree(std::size_t n, std::uint64_t seed);
/// (C_n, C_{floor(n/2)} + C_{ceil(n/2)}): same degree sequence, 1-WL trap.
std::pair<Graph, Graph> gen_regular_pair(std::size_t n);
/// Random connected graph (spanning tree plus extra edges) with a random
/// cyclic order around every vertex.
rotation::RotationSystem gen_rotation(std::size_t n, std::uint64_t seed,
                                      double extra_edge_prob = 0.3);
/// All rotation systems of g if there are at most limit of them, otherwise
/// limit seeded samples; in deterministic order.
std::vector<rotation::RotationSystem> rotations_of(const Graph& g,
                                                   std::size_t limit,
                                                   std::uint64_t seed);

/// Treewidth via the subset recurrence over elimination orders; n <= 12.
std::size_t exact_treewidth(const Graph& g);

/// One representative per isomorphism class of graphs on n vertices,
/// n <= 7, built by vertex extension of the (n-1)-catalog.
std::vector<Graph> all_graphs(std::size_t n);

std::vector<Vertex> random_permutation(std::size_t n, std::uint64_t seed);
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

/// Deduplicates up to isomorphism with brute_force_iso, keeping first
/// occurrences.
std::vector<Graph> unique_up_to_iso(const std::vector<Graph>& graphs,
                                    std::size_t max_vertices = 12);

}  // namespace wliso::gen
