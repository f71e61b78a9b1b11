#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wliso/graph.hpp"

namespace wliso::wl {

enum class Variant { Counting, CountFree };
enum class Decision { Isomorphic, NonIsomorphic };

const char* to_string(Variant v);
const char* to_string(Decision d);
std::optional<Variant> parse_variant(const std::string& s);

/// Isomorphism type of a k-tuple: equality pattern, adjacency pattern,
/// ternary facts (structures only) and the vertex colors along the tuple.
struct IsoType {
  std::vector<std::pair<unsigned, unsigned>> eq_pairs;
  std::vector<std::pair<unsigned, unsigned>> adj_pairs;
  std::vector<std::array<unsigned, 3>> rel_triples;
  std::vector<std::uint32_t> color_vec;

  /// The 2k^2 equality-then-adjacency bits, row-major over [k]^2.
  std::vector<bool> bits(unsigned k) const;
  friend bool operator==(const IsoType&, const IsoType&) = default;
};

IsoType isotype(const Structure& s, std::span<const Vertex> tuple);

/// Joint coloring of V(G)^k ∪ V(H)^k. Tuples of G occupy indices
/// [0, |G|^k), tuples of H follow. A color name is the least tuple index
/// carrying that color, so names are canonical and lie in [0, N).
struct ColoringState {
  unsigned k = 0;
  std::uint64_t round = 0;
  std::size_t n_g = 0;
  std::size_t n_h = 0;
  std::size_t tuples_g = 0;
  std::size_t tuples_h = 0;
  std::vector<std::uint32_t> color;
  std::size_t class_count = 0;
  bool stable = false;

  std::size_t tuple_count() const { return tuples_g + tuples_h; }
};

struct WlOptions {
  Variant variant = Variant::Counting;
  /// Defaults to 2n^k, the stabilization bound.
  std::optional<std::uint64_t> max_rounds;
  std::uint64_t tuple_budget = default_tuple_budget();
  unsigned threads = default_threads();
};

/// Tuple count N = |G|^k + |H|^k; throws BudgetExceeded above the budget.
std::size_t checked_tuple_count(std::size_t n_g, std::size_t n_h, unsigned k,
                                std::uint64_t budget);

ColoringState initial_coloring(const Structure& g, const Structure& h,
                               unsigned k, const WlOptions& options = {});

/// One refinement round. For k = 1 this is classical color refinement on
/// neighbor colors; for k >= 2 the substitution signature over all w.
ColoringState refine_round(const Structure& g, const Structure& h,
                           const ColoringState& state, Variant variant,
                           unsigned threads = 1);

/// Compares multisets of G- vs H-colors (counting) or sets
/// (count-free).
Decision decide(const ColoringState& state, Variant variant);

struct WlReport {
  Decision decision = Decision::Isomorphic;
  unsigned k = 0;
  Variant variant = Variant::Counting;
  std::uint64_t rounds_run = 0;
  /// Least i whose partition equals that of round i+1; unset when the
  /// round cap was hit before stabilization.
  std::optional<std::uint64_t> rounds_to_stable;
  std::vector<std::size_t> class_counts;

  bool stabilized() const { return rounds_to_stable.has_value(); }
};

WlReport run(const Structure& g, const Structure& h, unsigned k,
             const WlOptions& options = {});

/// Least r whose r-round decision is non-isomorphic; nullopt ("never") when
/// the coloring stabilizes, or the round cap is hit, first.
std::optional<std::uint64_t> min_distinguishing_round(
    const Structure& g, const Structure& h, unsigned k,
    const WlOptions& options = {});

/// JSON object {schema, decision, k, variant, rounds_run, rounds_to_stable,
/// class_counts}.
std::string to_json(const WlReport& report);

/// Every completed run is checked against rounds_to_stable < N; the counters
/// let test suites confirm that across everything they executed.
struct StabilizationAudit {
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
};
StabilizationAudit stabilization_audit();

}  // namespace wliso::wl
