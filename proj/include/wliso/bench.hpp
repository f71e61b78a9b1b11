#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wliso/graph.hpp"
#include "wliso/rotation.hpp"

namespace wliso::bench {

enum class Family { Btw, Rotation };
std::optional<Family> parse_family(const std::string& s);
const char* to_string(Family f);

/// Round bound for treewidth-k graphs at WL dimension 4k + 3.
double treewidth_bound(std::size_t n, unsigned k);
/// Round bound for rotation systems at count-free dimension 4.
double rotation_bound(std::size_t n);

struct BoundRow {
  std::size_t index = 0;
  std::size_t n = 0;
  unsigned k = 0;          // treewidth parameter; 0 for rotation pairs
  unsigned dimension = 0;  // WL dimension used
  std::optional<std::uint64_t> rounds;  // nullopt = never distinguished
  double bound = 0;
  bool ok = false;
};

struct BenchTable {
  Family family = Family::Btw;
  std::vector<BoundRow> rows;
  /// Instances dropped because the tuple budget could not hold them.
  std::size_t skipped = 0;

  bool all_ok() const;
};

struct BenchOptions {
  Family family = Family::Btw;
  unsigned kmax = 1;
  std::size_t nmax = 8;
  std::size_t seeds = 4;
  unsigned threads = 1;
  std::uint64_t tuple_budget = default_tuple_budget();
};

/// Counting (4k+3)-WL on one pair; ok iff it distinguishes strictly within
/// the bound.
BoundRow measure_treewidth_pair(const Graph& g, const Graph& h, unsigned k,
                                unsigned threads,
                                std::uint64_t tuple_budget = default_tuple_budget());
/// Count-free 4-WL on the ternary structures of two rotation systems.
BoundRow measure_rotation_pair(const rotation::RotationSystem& a,
                               const rotation::RotationSystem& b, unsigned threads);

/// Seeded non-isomorphic pairs of partial k-trees with equal vertex counts,
/// n from k + 2 to nmax, `seeds` pairs per n.
std::vector<std::pair<Graph, Graph>> treewidth_instances(unsigned k, std::size_t nmax,
                                                         std::size_t seeds);
/// Seeded non-isomorphic pairs of valid rotation systems, n from 3 to nmax.
/// Even seeds re-embed one graph, odd seeds draw two random systems.
std::vector<std::pair<rotation::RotationSystem, rotation::RotationSystem>>
rotation_instances(std::size_t nmax, std::size_t seeds);

BenchTable bench_bounds(const BenchOptions& options);

/// Tab-separated: header, one row per pair, then "overall\tpass|fail".
std::string format_table(const BenchTable& table);

}  // namespace wliso::bench
