#include "wliso/circuit.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace wliso::circuit {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Input: return "INPUT";
    case GateKind::And: return "AND";
    case GateKind::Or: return "OR";
    case GateKind::Not: return "NOT";
    case GateKind::Threshold: return "THRESHOLD";
  }
  return "?";
}

class Builder {
 public:
  Builder(std::size_t n, unsigned k, unsigned r, wl::Variant variant) {
    c_.n_ = n;
    c_.k_ = k;
    c_.r_ = r;
    c_.variant_ = variant;
    std::size_t p = 1;
    for (unsigned i = 0; i < k; ++i) p *= n;
    half_ = p;
    c_.tuple_count_ = 2 * p;
    pow_.assign(k, 1);
    for (int i = static_cast<int>(k) - 2; i >= 0; --i) pow_[i] = pow_[i + 1] * n;
  }

  std::uint32_t add(GateKind kind, std::uint32_t layer,
                    std::span<const std::uint32_t> fanin, std::uint32_t threshold = 0) {
    Gate g;
    g.kind = kind;
    g.layer = layer;
    g.threshold = threshold;
    g.fanin_begin = static_cast<std::uint32_t>(c_.fanin_.size());
    g.fanin_size = static_cast<std::uint32_t>(fanin.size());
    std::uint32_t level = 0;
    for (std::uint32_t f : fanin) level = std::max(level, c_.level_[f] + 1);
    if (kind != GateKind::Input && fanin.empty()) level = 1;
    c_.fanin_.insert(c_.fanin_.end(), fanin.begin(), fanin.end());
    c_.gates_.push_back(g);
    c_.level_.push_back(level);
    return static_cast<std::uint32_t>(c_.gates_.size() - 1);
  }
  std::uint32_t add(GateKind kind, std::uint32_t layer,
                    std::initializer_list<std::uint32_t> fanin) {
    return add(kind, layer, std::span(fanin.begin(), fanin.size()));
  }

  // a ↔ b as (a ∧ b) ∨ (¬a ∧ ¬b).
  std::uint32_t iff(std::uint32_t layer, std::uint32_t a, std::uint32_t b,
                    std::uint32_t na, std::uint32_t nb) {
    const std::uint32_t both = add(GateKind::And, layer, {a, b});
    const std::uint32_t neither = add(GateKind::And, layer, {na, nb});
    return add(GateKind::Or, layer, {both, neither});
  }

  // Index of the tuple obtained from a by setting position j to v.
  std::size_t substitute(std::size_t a, unsigned j, std::size_t v) const {
    const std::size_t offset = a < half_ ? 0 : half_;
    const std::size_t local = a - offset;
    const std::size_t digit = (local / pow_[j]) % c_.n_;
    return offset + local - digit * pow_[j] + v * pow_[j];
  }

  // X(a, c) = Y(a, c) ∧ ⋀_{d<c} ¬Y(a, d), for ordered Y given row-major.
  std::vector<std::uint32_t> names(std::uint32_t layer,
                                   const std::vector<std::uint32_t>& y) {
    const std::size_t N = c_.tuple_count_;
    std::vector<std::uint32_t> ny(N * N);
    for (std::size_t i = 0; i < N * N; ++i) ny[i] = add(GateKind::Not, layer, {y[i]});
    std::vector<std::uint32_t> x(N * N);
    std::vector<std::uint32_t> fan;
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t c = 0; c < N; ++c) {
        fan.clear();
        fan.push_back(y[a * N + c]);
        for (std::size_t d = 0; d < c; ++d) fan.push_back(ny[a * N + d]);
        x[a * N + c] = add(GateKind::And, layer, fan);
      }
    return x;
  }

  void layer_zero() {
    const std::size_t N = c_.tuple_count_;
    const std::size_t B = c_.bits_per_tuple();
    std::vector<std::uint32_t> z(N * B), nz(N * B);
    for (std::size_t i = 0; i < N * B; ++i) z[i] = add(GateKind::Input, 0, {});
    for (std::size_t i = 0; i < N * B; ++i) nz[i] = add(GateKind::Not, 0, {z[i]});
    // Y_0 is symmetric as a formula; one copy per unordered pair.
    std::vector<std::uint32_t> y(N * N);
    std::vector<std::uint32_t> fan(B);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a; b < N; ++b) {
        for (std::size_t j = 0; j < B; ++j)
          fan[j] = iff(0, z[a * B + j], z[b * B + j], nz[a * B + j], nz[b * B + j]);
        y[a * N + b] = y[b * N + a] = add(GateKind::And, 0, fan);
      }
    c_.x_gates_.push_back(names(0, y));
  }

  void refinement_layer(std::uint32_t layer) {
    const std::size_t N = c_.tuple_count_;
    const std::size_t n = c_.n_;
    const unsigned k = c_.k_;
    const auto& x = c_.x_gates_.back();
    std::vector<std::uint32_t> nx(N * N);
    for (std::size_t i = 0; i < N * N; ++i) nx[i] = add(GateKind::Not, layer, {x[i]});
    // E(a, b) = ⋀_c X(a, c) ↔ X(b, c): equal previous colors.
    std::vector<std::uint32_t> e(N * N);
    std::vector<std::uint32_t> fan(N);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = a; b < N; ++b) {
        for (std::size_t c = 0; c < N; ++c)
          fan[c] = iff(layer, x[a * N + c], x[b * N + c], nx[a * N + c], nx[b * N + c]);
        e[a * N + b] = e[b * N + a] = add(GateKind::And, layer, fan);
      }
    // psi_ab(v, w): the substitution signatures of a at v and b at w agree.
    std::vector<std::uint32_t> psi(N * N * n * n);
    auto psi_at = [&](std::size_t a, std::size_t b, std::size_t v, std::size_t w) {
      return ((a * N + b) * n + v) * n + w;
    };
    std::vector<std::uint32_t> sig(k);
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        for (std::size_t v = 0; v < n; ++v)
          for (std::size_t w = 0; w < n; ++w) {
            for (unsigned j = 0; j < k; ++j)
              sig[j] = e[substitute(a, j, v) * N + substitute(b, j, w)];
            psi[psi_at(a, b, v, w)] = add(GateKind::And, layer, sig);
          }
    std::vector<std::uint32_t> y(N * N);
    std::vector<std::uint32_t> conj, part;
    if (c_.variant_ == wl::Variant::Counting) {
      std::vector<std::uint32_t> npsi(psi.size());
      for (std::size_t i = 0; i < psi.size(); ++i)
        npsi[i] = add(GateKind::Not, layer, {psi[i]});
      // Σ_v' phi(v, v') = Σ_w psi(v, w) as two thresholds at n:
      // Σ phi + Σ ¬psi >= n and Σ ¬phi + Σ psi >= n, with phi = psi_aa.
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
          conj.assign(1, e[a * N + b]);
          for (std::size_t v = 0; v < n; ++v) {
            part.clear();
            for (std::size_t v2 = 0; v2 < n; ++v2) part.push_back(psi[psi_at(a, a, v, v2)]);
            for (std::size_t w = 0; w < n; ++w) part.push_back(npsi[psi_at(a, b, v, w)]);
            conj.push_back(add(GateKind::Threshold, layer, part, static_cast<std::uint32_t>(n)));
            part.clear();
            for (std::size_t v2 = 0; v2 < n; ++v2) part.push_back(npsi[psi_at(a, a, v, v2)]);
            for (std::size_t w = 0; w < n; ++w) part.push_back(psi[psi_at(a, b, v, w)]);
            conj.push_back(add(GateKind::Threshold, layer, part, static_cast<std::uint32_t>(n)));
          }
          y[a * N + b] = add(GateKind::And, layer, conj);
        }
    } else {
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) {
          conj.assign(1, e[a * N + b]);
          for (std::size_t v = 0; v < n; ++v) {
            part.clear();
            for (std::size_t w = 0; w < n; ++w) part.push_back(psi[psi_at(a, b, v, w)]);
            conj.push_back(add(GateKind::Or, layer, part));
          }
          for (std::size_t w = 0; w < n; ++w) {
            part.clear();
            for (std::size_t v = 0; v < n; ++v) part.push_back(psi[psi_at(a, b, v, w)]);
            conj.push_back(add(GateKind::Or, layer, part));
          }
          y[a * N + b] = add(GateKind::And, layer, conj);
        }
    }
    c_.x_gates_.push_back(names(layer, y));
  }

  void output_layer(std::uint32_t layer) {
    const std::size_t N = c_.tuple_count_;
    const auto& x = c_.x_gates_.back();
    std::vector<std::uint32_t> conj, part;
    if (c_.variant_ == wl::Variant::Counting) {
      std::vector<std::uint32_t> nx(N * N);
      for (std::size_t i = 0; i < N * N; ++i) nx[i] = add(GateKind::Not, layer, {x[i]});
      const auto t = static_cast<std::uint32_t>(half_);
      for (std::size_t c = 0; c < N; ++c) {
        part.clear();
        for (std::size_t a = 0; a < half_; ++a) part.push_back(x[a * N + c]);
        for (std::size_t b = half_; b < N; ++b) part.push_back(nx[b * N + c]);
        conj.push_back(add(GateKind::Threshold, layer, part, t));
        part.clear();
        for (std::size_t a = 0; a < half_; ++a) part.push_back(nx[a * N + c]);
        for (std::size_t b = half_; b < N; ++b) part.push_back(x[b * N + c]);
        conj.push_back(add(GateKind::Threshold, layer, part, t));
      }
    } else {
      for (std::size_t c = 0; c < N; ++c) {
        part.clear();
        for (std::size_t a = 0; a < half_; ++a) part.push_back(x[a * N + c]);
        const std::uint32_t in_g = add(GateKind::Or, layer, part);
        part.clear();
        for (std::size_t b = half_; b < N; ++b) part.push_back(x[b * N + c]);
        const std::uint32_t in_h = add(GateKind::Or, layer, part);
        const std::uint32_t not_g = add(GateKind::Not, layer, {in_g});
        const std::uint32_t not_h = add(GateKind::Not, layer, {in_h});
        conj.push_back(iff(layer, in_g, in_h, not_g, not_h));
      }
    }
    c_.output_ = add(GateKind::And, layer, conj);
  }

  CircuitDag finish() {
    const std::uint32_t top = *std::max_element(c_.level_.begin(), c_.level_.end());
    c_.level_begin_.assign(top + 2, 0);
    for (std::uint32_t l : c_.level_) ++c_.level_begin_[l + 1];
    for (std::size_t i = 1; i < c_.level_begin_.size(); ++i)
      c_.level_begin_[i] += c_.level_begin_[i - 1];
    c_.level_order_.resize(c_.gates_.size());
    auto cursor = c_.level_begin_;
    for (std::uint32_t id = 0; id < c_.gates_.size(); ++id)
      c_.level_order_[cursor[c_.level_[id]]++] = id;
    return std::move(c_);
  }

 private:
  CircuitDag c_;
  std::size_t half_ = 0;
  std::vector<std::size_t> pow_;
};

std::uint64_t estimate_gates(std::size_t n, unsigned k, unsigned r,
                             wl::Variant variant) {
  long double half = 1;
  for (unsigned i = 0; i < k; ++i) half *= static_cast<long double>(n);
  const long double N = 2 * half, B = 2.0L * k * k, nn = static_cast<long double>(n);
  const long double pairs = N * (N + 1) / 2;
  long double total = N * B + pairs * (3 * B + 1) + 2 * N * N;
  const long double refine_common = N * N + pairs * (3 * N + 1) + N * N * nn * nn + 3 * N * N;
  const long double refine_extra = variant == wl::Variant::Counting
                                       ? N * N * nn * nn + 2 * N * N * nn
                                       : 2 * N * N * nn;
  total += r * (refine_common + refine_extra);
  total += variant == wl::Variant::Counting ? N * N + 2 * N + 1 : 7 * N + 1;
  if (total > 1e18L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(total);
}

CircuitDag compile(std::size_t n, unsigned k, unsigned r, wl::Variant variant,
                   const CompileOptions& options) {
  if (k < 2) fail(ErrorCode::InvalidArgument, "circuit construction needs k >= 2");
  if (n == 0) fail(ErrorCode::InvalidArgument, "circuit construction needs n >= 1");
  if (n > options.max_n || k > options.max_k || r > options.max_r)
    fail(ErrorCode::BudgetExceeded,
         "circuit parameters exceed limits (n <= " + std::to_string(options.max_n) +
             ", k <= " + std::to_string(options.max_k) +
             ", r <= " + std::to_string(options.max_r) + ")");
  const std::uint64_t estimate = estimate_gates(n, k, r, variant);
  if (estimate > options.max_gates || estimate > std::numeric_limits<std::uint32_t>::max() / 4)
    fail(ErrorCode::BudgetExceeded,
         "circuit would need about " + std::to_string(estimate) + " gates");
  Builder b(n, k, r, variant);
  b.layer_zero();
  for (unsigned l = 1; l <= r; ++l) b.refinement_layer(l);
  b.output_layer(r + 1);
  return b.finish();
}

CircuitStats CircuitDag::stats() const {
  CircuitStats s;
  s.wire_count = fanin_.size();
  for (std::size_t id = 0; id < gates_.size(); ++id) {
    const Gate& g = gates_[id];
    if (g.layer >= s.gates_per_layer.size()) s.gates_per_layer.resize(g.layer + 1, 0);
    if (g.kind == GateKind::Input) {
      ++s.input_count;
      continue;
    }
    ++s.gate_count;
    ++s.gates_per_layer[g.layer];
    if (g.kind == GateKind::Threshold) ++s.threshold_count;
    s.depth = std::max<std::size_t>(s.depth, level_[id]);
    s.macro_layers = std::max(s.macro_layers, g.layer + 1);
  }
  return s;
}

std::string CircuitDag::dump() const {
  std::ostringstream out;
  out << n_ << ' ' << k_ << ' ' << r_ << ' ' << wl::to_string(variant_) << '\n';
  for (std::uint32_t id = 0; id < gates_.size(); ++id) {
    const Gate& g = gates_[id];
    out << id << ' ' << to_string(g.kind);
    if (g.kind == GateKind::Threshold) out << ' ' << g.threshold;
    out << ' ' << g.layer;
    for (std::uint32_t f : fanin(id)) out << ' ' << f;
    out << '\n';
  }
  return out.str();
}

std::vector<std::uint8_t> bind_inputs(const CircuitDag& c, const Graph& g,
                                      const Graph& h) {
  const std::size_t n = c.n();
  if (g.size() != n || h.size() != n)
    fail(ErrorCode::InvalidArgument,
         "circuit compiled for n = " + std::to_string(n) + ", got " +
             std::to_string(g.size()) + " and " + std::to_string(h.size()));
  if (g.colored() || h.colored())
    fail(ErrorCode::Precondition, "circuit inputs encode uncolored graphs only");
  const unsigned k = c.k();
  const std::size_t B = c.bits_per_tuple();
  const std::size_t half = c.tuple_count() / 2;
  std::vector<std::uint8_t> bits(c.input_count(), 0);
  std::vector<Vertex> u(k);
  for (std::size_t a = 0; a < c.tuple_count(); ++a) {
    const Graph& gr = a < half ? g : h;
    std::size_t local = a < half ? a : a - half;
    for (int i = static_cast<int>(k) - 1; i >= 0; --i) {
      u[i] = static_cast<Vertex>(local % n);
      local /= n;
    }
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) {
        bits[a * B + i * k + j] = u[i] == u[j];
        bits[a * B + k * k + i * k + j] = gr.has_edge(u[i], u[j]);
      }
  }
  return bits;
}

namespace {

std::uint64_t eval_gate(const CircuitDag& c, std::uint32_t id,
                        const std::vector<std::uint64_t>& value) {
  const Gate& g = c.gates()[id];
  const auto in = c.fanin(id);
  switch (g.kind) {
    case GateKind::Input: return value[id];
    case GateKind::And: {
      std::uint64_t acc = ~0ULL;
      for (std::uint32_t f : in) acc &= value[f];
      return acc;
    }
    case GateKind::Or: {
      std::uint64_t acc = 0;
      for (std::uint32_t f : in) acc |= value[f];
      return acc;
    }
    case GateKind::Not: return ~value[in[0]];
    case GateKind::Threshold: {
      std::uint32_t count[64] = {};
      for (std::uint32_t f : in)
        for (std::uint64_t w = value[f]; w; w &= w - 1) ++count[std::countr_zero(w)];
      std::uint64_t out = 0;
      for (unsigned lane = 0; lane < 64; ++lane)
        if (count[lane] >= g.threshold) out |= 1ULL << lane;
      return out;
    }
  }
  return 0;
}

}  // namespace

std::vector<std::uint64_t> evaluate_lanes(const CircuitDag& c,
                                          std::span<const std::uint64_t> inputs,
                                          unsigned threads) {
  if (inputs.size() != c.input_count())
    fail(ErrorCode::InvalidArgument, "assignment has wrong length");
  std::vector<std::uint64_t> value(c.gates().size(), 0);
  std::copy(inputs.begin(), inputs.end(), value.begin());
  if (threads <= 1) {
    // Ids are already topologically ordered.
    for (std::uint32_t id = static_cast<std::uint32_t>(inputs.size()); id < value.size(); ++id)
      value[id] = eval_gate(c, id, value);
    return value;
  }
  for (std::size_t l = 1; l + 1 < c.level_begin_.size(); ++l) {
    const std::size_t begin = c.level_begin_[l], end = c.level_begin_[l + 1];
    parallel_for(end - begin, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        const std::uint32_t id = c.level_order_[begin + i];
        value[id] = eval_gate(c, id, value);
      }
    });
  }
  return value;
}

std::vector<std::uint8_t> evaluate_all(const CircuitDag& c,
                                       std::span<const std::uint8_t> inputs,
                                       unsigned threads) {
  std::vector<std::uint64_t> lanes(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) lanes[i] = inputs[i] ? 1 : 0;
  const auto value = evaluate_lanes(c, lanes, threads);
  std::vector<std::uint8_t> out(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) out[i] = value[i] & 1U;
  return out;
}

bool evaluate(const CircuitDag& c, std::span<const std::uint8_t> inputs,
              unsigned threads) {
  return evaluate_all(c, inputs, threads)[c.output()] != 0;
}

std::vector<bool> evaluate_batch(const CircuitDag& c,
                                 const std::vector<std::vector<std::uint8_t>>& inputs,
                                 unsigned threads) {
  if (inputs.size() > 64) fail(ErrorCode::InvalidArgument, "at most 64 assignments per batch");
  std::vector<std::uint64_t> lanes(c.input_count(), 0);
  for (std::size_t lane = 0; lane < inputs.size(); ++lane) {
    if (inputs[lane].size() != c.input_count())
      fail(ErrorCode::InvalidArgument, "assignment has wrong length");
    for (std::size_t i = 0; i < lanes.size(); ++i)
      if (inputs[lane][i]) lanes[i] |= 1ULL << lane;
  }
  const auto value = evaluate_lanes(c, lanes, threads);
  std::vector<bool> out(inputs.size());
  for (std::size_t lane = 0; lane < inputs.size(); ++lane)
    out[lane] = (value[c.output()] >> lane) & 1U;
  return out;
}

EquivalenceReport check_equivalence_exhaustive(const CircuitDag& c, bool check_layers,
                                               unsigned threads) {
  const std::size_t n = c.n();
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) slots.emplace_back(u, v);
  if (slots.size() > 16) fail(ErrorCode::BudgetExceeded, "exhaustive check limited to n <= 6");
  std::vector<Graph> graphs;
  for (std::uint32_t mask = 0; mask < (1U << slots.size()); ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < slots.size(); ++i)
      if ((mask >> i) & 1U) g.add_edge(slots[i].first, slots[i].second);
    graphs.push_back(std::move(g));
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < graphs.size(); ++i)
    for (std::size_t j = i; j < graphs.size(); ++j) pairs.emplace_back(i, j);

  const std::size_t N = c.tuple_count();
  EquivalenceReport report;
  wl::WlOptions opts;
  opts.variant = c.variant();
  opts.max_rounds = c.r();
  opts.threads = 1;
  for (std::size_t start = 0; start < pairs.size(); start += 64) {
    const std::size_t count = std::min<std::size_t>(64, pairs.size() - start);
    std::vector<std::uint64_t> lanes(c.input_count(), 0);
    for (std::size_t lane = 0; lane < count; ++lane) {
      const auto [i, j] = pairs[start + lane];
      const auto bits = bind_inputs(c, graphs[i], graphs[j]);
      for (std::size_t b = 0; b < bits.size(); ++b)
        if (bits[b]) lanes[b] |= 1ULL << lane;
    }
    const auto value = evaluate_lanes(c, lanes, threads);
    for (std::size_t lane = 0; lane < count; ++lane) {
      const auto [i, j] = pairs[start + lane];
      const Graph& g = graphs[i];
      const Graph& h = graphs[j];
      ++report.pairs;
      const bool verdict = (value[c.output()] >> lane) & 1U;
      const bool direct = wl::run(g, h, c.k(), opts).decision == wl::Decision::Isomorphic;
      if (verdict != direct) ++report.mismatches;
      if (!check_layers) continue;
      wl::ColoringState state = wl::initial_coloring(g, h, c.k(), opts);
      for (unsigned layer = 0; layer <= c.r(); ++layer) {
        if (layer > 0) state = wl::refine_round(g, h, state, c.variant(), 1);
        for (std::size_t a = 0; a < N; ++a) {
          std::size_t ones = 0;
          bool name_ok = true;
          for (std::size_t col = 0; col < N; ++col) {
            const bool bit = (value[c.x_gate(layer, a, col)] >> lane) & 1U;
            ones += bit;
            if (bit != (state.color[a] == col)) name_ok = false;
          }
          if (ones != 1) ++report.one_hot_violations;
          if (!name_ok) ++report.name_mismatches;
        }
      }
    }
  }
  return report;
}

}  // namespace wliso::circuit
