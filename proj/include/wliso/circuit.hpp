#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wliso/graph.hpp"
#include "wliso/wl.hpp"

namespace wliso::circuit {

enum class GateKind : std::uint8_t { Input, And, Or, Not, Threshold };

const char* to_string(GateKind kind);

struct Gate {
  GateKind kind = GateKind::Input;
  /// Threshold gates fire iff at least `threshold` fanins are 1.
  std::uint32_t threshold = 0;
  /// Macro-layer 0..r+1 (inputs sit in layer 0).
  std::uint32_t layer = 0;
  std::uint32_t fanin_begin = 0;
  std::uint32_t fanin_size = 0;
};

struct CompileOptions {
  std::size_t max_n = 5;
  unsigned max_k = 2;
  unsigned max_r = 4;
  std::uint64_t max_gates = 20'000'000;
};

struct CircuitStats {
  std::size_t gate_count = 0;  // non-input gates
  std::size_t input_count = 0;
  std::size_t wire_count = 0;
  std::size_t threshold_count = 0;
  std::size_t depth = 0;  // longest input-to-output gate path
  std::uint32_t macro_layers = 0;
  std::vector<std::size_t> gates_per_layer;
};

class CircuitDag {
 public:
  std::size_t n() const noexcept { return n_; }
  unsigned k() const noexcept { return k_; }
  unsigned r() const noexcept { return r_; }
  wl::Variant variant() const noexcept { return variant_; }

  /// N = 2n^k tuple indices; G tuples first.
  std::size_t tuple_count() const noexcept { return tuple_count_; }
  std::size_t bits_per_tuple() const noexcept { return 2ULL * k_ * k_; }
  std::size_t input_count() const noexcept { return tuple_count_ * bits_per_tuple(); }

  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::span<const std::uint32_t> fanin(std::uint32_t id) const {
    const Gate& g = gates_[id];
    return std::span(fanin_).subspan(g.fanin_begin, g.fanin_size);
  }
  std::uint32_t output() const noexcept { return output_; }
  /// Gate id of X_layer(a, c).
  std::uint32_t x_gate(unsigned layer, std::size_t a, std::size_t c) const {
    return x_gates_[layer][a * tuple_count_ + c];
  }
  /// Gate levels (inputs 0); evaluation proceeds level by level.
  const std::vector<std::uint32_t>& levels() const noexcept { return level_; }

  CircuitStats stats() const;
  /// "n k r variant" header, then "id kind [threshold] layer fanin..." lines.
  std::string dump() const;

 private:
  friend class Builder;
  friend std::vector<std::uint64_t> evaluate_lanes(const CircuitDag&,
                                                   std::span<const std::uint64_t>,
                                                   unsigned);
  std::size_t n_ = 0;
  unsigned k_ = 0;
  unsigned r_ = 0;
  wl::Variant variant_ = wl::Variant::Counting;
  std::size_t tuple_count_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::uint32_t> fanin_;
  std::vector<std::uint32_t> level_;
  // Gate ids grouped by level, for level-synchronous evaluation.
  std::vector<std::uint32_t> level_order_;
  std::vector<std::size_t> level_begin_;
  std::vector<std::vector<std::uint32_t>> x_gates_;
  std::uint32_t output_ = 0;
};

/// Layered gate DAG: layer 0 computes X_0 from the isomorphism-type bits,
/// layers 1..r refine, layer r+1 compares the color multisets (or sets).
/// Requires k >= 2, where refinement substitutes every vertex.
CircuitDag compile(std::size_t n, unsigned k, unsigned r, wl::Variant variant,
                   const CompileOptions& options = {});

/// Upper estimate of the gate count compile would produce.
std::uint64_t estimate_gates(std::size_t n, unsigned k, unsigned r,
                             wl::Variant variant);

/// The 2k^2 equality/adjacency bits of every tuple of g then h. Both graphs
/// must have n vertices and no vertex colors.
std::vector<std::uint8_t> bind_inputs(const CircuitDag& c, const Graph& g,
                                      const Graph& h);

/// Bit-sliced evaluation: inputs[i] holds input i for 64 assignments, one
/// per lane; returns every gate's lanes.
std::vector<std::uint64_t> evaluate_lanes(const CircuitDag& c,
                                          std::span<const std::uint64_t> inputs,
                                          unsigned threads = 1);
/// Value of every gate.
std::vector<std::uint8_t> evaluate_all(const CircuitDag& c,
                                       std::span<const std::uint8_t> inputs,
                                       unsigned threads = 1);
/// true = "isomorphic" verdict.
bool evaluate(const CircuitDag& c, std::span<const std::uint8_t> inputs,
              unsigned threads = 1);
/// Up to 64 assignments at once, one per bit lane.
std::vector<bool> evaluate_batch(const CircuitDag& c,
                                 const std::vector<std::vector<std::uint8_t>>& inputs,
                                 unsigned threads = 1);

struct EquivalenceReport {
  std::size_t pairs = 0;
  std::size_t mismatches = 0;
  std::size_t one_hot_violations = 0;
  /// Layer outputs whose color name differs from the direct engine's.
  std::size_t name_mismatches = 0;
};

/// Every unordered pair of labeled graphs on n vertices (including g = h):
/// circuit verdict versus the direct r-round decision. With check_layers,
/// X_l is also compared against the engine's color names at every layer.
EquivalenceReport check_equivalence_exhaustive(const CircuitDag& c,
                                               bool check_layers = false,
                                               unsigned threads = 1);

}  // namespace wliso::circuit
