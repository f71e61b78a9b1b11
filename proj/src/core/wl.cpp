#include "wliso/wl.hpp"

#include <atomic>
#include <functional>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace wliso::wl {

namespace {

std::atomic<std::uint64_t> g_runs{0};
std::atomic<std::uint64_t> g_violations{0};

// Addressing of V(G)^k ∪ V(H)^k. Position 0 is the most significant digit,
// so tuple indices follow the lexicographic order of tuples.
struct TupleSpace {
  unsigned k;
  std::size_t n_g, n_h, tuples_g, tuples_h;
  std::vector<std::size_t> pow_g, pow_h;

  TupleSpace(std::size_t ng, std::size_t nh, unsigned dim)
      : k(dim), n_g(ng), n_h(nh) {
    pow_g.assign(k, 1);
    pow_h.assign(k, 1);
    for (int i = static_cast<int>(k) - 2; i >= 0; --i) {
      pow_g[i] = pow_g[i + 1] * n_g;
      pow_h[i] = pow_h[i + 1] * n_h;
    }
    tuples_g = k == 0 ? 0 : pow_g[0] * n_g;
    tuples_h = k == 0 ? 0 : pow_h[0] * n_h;
  }

  std::size_t total() const { return tuples_g + tuples_h; }
  bool in_g(std::size_t t) const { return t < tuples_g; }

  // Local index within its graph, and the tuple digits.
  std::size_t decode(std::size_t t, std::span<Vertex> digits) const {
    const bool g = in_g(t);
    const std::size_t local = g ? t : t - tuples_g;
    const auto& pw = g ? pow_g : pow_h;
    const std::size_t n = g ? n_g : n_h;
    for (unsigned i = 0; i < k; ++i)
      digits[i] = static_cast<Vertex>((local / pw[i]) % n);
    return local;
  }
};

// Assigns every index in [0, count) the least index whose signature equals
// its own. sig(t, buffer) fills the signature words of item t.
template <class SigFn>
std::vector<std::uint32_t> canonical_names(std::size_t count, unsigned threads,
                                           SigFn&& sig) {
  std::vector<std::uint64_t> hashes(count);
  parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> buf;
    for (std::size_t t = begin; t < end; ++t) {
      buf.clear();
      sig(t, buf);
      hashes[t] = hash_words(buf);
    }
  });
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0U);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return hashes[a] != hashes[b] ? hashes[a] < hashes[b] : a < b;
  });
  std::vector<std::uint32_t> name(count);
  std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> reps;
  std::vector<std::uint32_t> buf;
  std::size_t i = 0;
  while (i < count) {
    std::size_t j = i + 1;
    while (j < count && hashes[order[j]] == hashes[order[i]]) ++j;
    if (j == i + 1) {
      name[order[i]] = order[i];
    } else {
      reps.clear();
      for (std::size_t p = i; p < j; ++p) {
        const std::uint32_t t = order[p];
        buf.clear();
        sig(t, buf);
        auto hit = std::find_if(reps.begin(), reps.end(),
                                [&](const auto& r) { return r.second == buf; });
        if (hit == reps.end()) {
          reps.emplace_back(t, buf);
          name[t] = t;
        } else {
          name[t] = hit->first;
        }
      }
    }
    i = j;
  }
  return name;
}

std::size_t count_classes(const std::vector<std::uint32_t>& name) {
  std::size_t c = 0;
  for (std::size_t t = 0; t < name.size(); ++t) c += name[t] == t;
  return c;
}

// Sorts rows of width `width` stored flat in buf[offset..], optionally
// dropping duplicate rows.
void canonicalize_rows(std::vector<std::uint32_t>& buf, std::size_t offset,
                       std::size_t width, bool dedupe) {
  const std::size_t rows = (buf.size() - offset) / width;
  if (rows <= 1 || width == 0) return;
  if (width == 1) {
    std::sort(buf.begin() + offset, buf.end());
    if (dedupe) buf.erase(std::unique(buf.begin() + offset, buf.end()), buf.end());
    return;
  }
  std::vector<std::uint32_t> idx(rows);
  std::iota(idx.begin(), idx.end(), 0U);
  auto row = [&](std::uint32_t r) { return buf.begin() + offset + r * width; };
  std::sort(idx.begin(), idx.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(row(a), row(a) + width, row(b),
                                        row(b) + width);
  });
  std::vector<std::uint32_t> sorted;
  sorted.reserve(rows * width);
  for (std::size_t p = 0; p < rows; ++p) {
    if (dedupe && p > 0 &&
        std::equal(row(idx[p]), row(idx[p]) + width, row(idx[p - 1])))
      continue;
    sorted.insert(sorted.end(), row(idx[p]), row(idx[p]) + width);
  }
  buf.resize(offset);
  buf.insert(buf.end(), sorted.begin(), sorted.end());
}

void audit(const WlReport& report, std::size_t tuple_count) {
  g_runs.fetch_add(1, std::memory_order_relaxed);
  if (report.rounds_to_stable && *report.rounds_to_stable >= tuple_count) {
    g_violations.fetch_add(1, std::memory_order_relaxed);
    fail(ErrorCode::Internal, "stabilization bound violated");
  }
}

}  // namespace

const char* to_string(Variant v) {
  return v == Variant::Counting ? "counting" : "count-free";
}

const char* to_string(Decision d) {
  return d == Decision::Isomorphic ? "isomorphic" : "non-isomorphic";
}

std::optional<Variant> parse_variant(const std::string& s) {
  if (s == "counting") return Variant::Counting;
  if (s == "count-free" || s == "countfree") return Variant::CountFree;
  return std::nullopt;
}

std::vector<bool> IsoType::bits(unsigned k) const {
  std::vector<bool> out(2 * k * k, false);
  for (auto [i, j] : eq_pairs) out[i * k + j] = true;
  for (auto [i, j] : adj_pairs) out[k * k + i * k + j] = true;
  return out;
}

IsoType isotype(const Structure& s, std::span<const Vertex> tuple) {
  IsoType out;
  const unsigned k = static_cast<unsigned>(tuple.size());
  for (Vertex v : tuple)
    if (v >= s.size()) fail(ErrorCode::InvalidArgument, "tuple vertex out of range");
  for (unsigned i = 0; i < k; ++i) {
    out.color_vec.push_back(s.graph().color(tuple[i]));
    for (unsigned j = 0; j < k; ++j) {
      if (tuple[i] == tuple[j]) out.eq_pairs.emplace_back(i, j);
      if (s.graph().has_edge(tuple[i], tuple[j])) out.adj_pairs.emplace_back(i, j);
      if (s.has_ternary())
        for (unsigned l = 0; l < k; ++l)
          if (s.ternary(tuple[i], tuple[j], tuple[l]))
            out.rel_triples.push_back({i, j, l});
    }
  }
  return out;
}

std::size_t checked_tuple_count(std::size_t n_g, std::size_t n_h, unsigned k,
                                std::uint64_t budget) {
  if (k == 0) fail(ErrorCode::InvalidArgument, "dimension k must be >= 1");
  const std::uint64_t cap = std::min<std::uint64_t>(
      budget, std::numeric_limits<std::uint32_t>::max());
  std::uint64_t total = 0;
  for (std::size_t n : {n_g, n_h}) {
    std::uint64_t p = 1;
    for (unsigned i = 0; i < k; ++i) {
      p *= n;
      if (p > cap) break;
    }
    total += p;
    if (total > cap)
      fail(ErrorCode::BudgetExceeded,
           "tuple count " + std::string(total > budget ? "exceeds" : "overflows") +
               " budget of " + std::to_string(budget) + " (k=" +
               std::to_string(k) + ")");
  }
  return static_cast<std::size_t>(total);
}

ColoringState initial_coloring(const Structure& g, const Structure& h,
                               unsigned k, const WlOptions& options) {
  checked_tuple_count(g.size(), h.size(), k, options.tuple_budget);
  const TupleSpace space(g.size(), h.size(), k);
  const bool ternary = g.has_ternary() || h.has_ternary();
  auto sig = [&](std::size_t t, std::vector<std::uint32_t>& buf) {
    Vertex digits[64];
    std::vector<Vertex> big;
    std::span<Vertex> u(digits, k);
    if (k > 64) {
      big.resize(k);
      u = big;
    }
    space.decode(t, u);
    const Structure& s = space.in_g(t) ? g : h;
    const Graph& gr = s.graph();
    // Equality pattern: position of the first occurrence of each entry.
    std::size_t rep_begin = buf.size();
    for (unsigned i = 0; i < k; ++i) {
      unsigned r = i;
      for (unsigned j = 0; j < i; ++j)
        if (u[j] == u[i]) {
          r = j;
          break;
        }
      buf.push_back(r);
    }
    for (unsigned i = 0; i < k; ++i)
      if (buf[rep_begin + i] == i) buf.push_back(gr.color(u[i]));
    std::uint32_t word = 0, nbits = 0;
    auto push_bit = [&](bool b) {
      word |= static_cast<std::uint32_t>(b) << nbits;
      if (++nbits == 32) {
        buf.push_back(word);
        word = nbits = 0;
      }
    };
    for (unsigned i = 0; i < k; ++i) {
      if (buf[rep_begin + i] != i) continue;
      for (unsigned j = i + 1; j < k; ++j)
        if (buf[rep_begin + j] == j) push_bit(gr.has_edge(u[i], u[j]));
    }
    if (ternary)
      for (unsigned i = 0; i < k; ++i) {
        if (buf[rep_begin + i] != i) continue;
        for (unsigned j = 0; j < k; ++j) {
          if (buf[rep_begin + j] != j) continue;
          for (unsigned l = 0; l < k; ++l)
            if (buf[rep_begin + l] == l) push_bit(s.ternary(u[i], u[j], u[l]));
        }
      }
    if (nbits) buf.push_back(word);
  };
  ColoringState state;
  state.k = k;
  state.n_g = g.size();
  state.n_h = h.size();
  state.tuples_g = space.tuples_g;
  state.tuples_h = space.tuples_h;
  state.color = canonical_names(space.total(), options.threads, sig);
  state.class_count = count_classes(state.color);
  return state;
}

ColoringState refine_round(const Structure& g, const Structure& h,
                           const ColoringState& state, Variant variant,
                           unsigned threads) {
  if (state.stable) return state;
  const unsigned k = state.k;
  const TupleSpace space(state.n_g, state.n_h, k);
  const bool dedupe = variant == Variant::CountFree;
  const auto& color = state.color;
  std::function<void(std::size_t, std::vector<std::uint32_t>&)> sig;
  if (k == 1) {
    sig = [&](std::size_t t, std::vector<std::uint32_t>& buf) {
      const bool in_g = space.in_g(t);
      const Graph& gr = in_g ? g.graph() : h.graph();
      const std::size_t offset = in_g ? 0 : space.tuples_g;
      const Vertex v = static_cast<Vertex>(t - offset);
      buf.push_back(color[t]);
      for (Vertex w : gr.neighbors(v)) buf.push_back(color[offset + w]);
      canonicalize_rows(buf, 1, 1, dedupe);
    };
  } else {
    sig = [&](std::size_t t, std::vector<std::uint32_t>& buf) {
      const bool in_g = space.in_g(t);
      const std::size_t n = in_g ? space.n_g : space.n_h;
      const std::size_t offset = in_g ? 0 : space.tuples_g;
      const auto& pw = in_g ? space.pow_g : space.pow_h;
      Vertex digits[64];
      std::vector<Vertex> big;
      std::span<Vertex> u(digits, k);
      if (k > 64) {
        big.resize(k);
        u = big;
      }
      const std::size_t local = space.decode(t, u);
      buf.push_back(color[t]);
      const std::size_t start = buf.size();
      buf.resize(start + n * k);
      for (unsigned j = 0; j < k; ++j) {
        const std::size_t base = offset + local - u[j] * pw[j];
        for (std::size_t w = 0; w < n; ++w)
          buf[start + w * k + j] = color[base + w * pw[j]];
      }
      canonicalize_rows(buf, 1, k, dedupe);
    };
  }
  ColoringState next;
  next.k = k;
  next.round = state.round + 1;
  next.n_g = state.n_g;
  next.n_h = state.n_h;
  next.tuples_g = state.tuples_g;
  next.tuples_h = state.tuples_h;
  next.color = canonical_names(space.total(), threads, sig);
  next.class_count = count_classes(next.color);
  next.stable = next.class_count == state.class_count;
  return next;
}

Decision decide(const ColoringState& state, Variant variant) {
  const std::size_t total = state.tuple_count();
  if (variant == Variant::Counting) {
    std::vector<std::int64_t> balance(total, 0);
    for (std::size_t t = 0; t < total; ++t)
      balance[state.color[t]] += t < state.tuples_g ? 1 : -1;
    return std::all_of(balance.begin(), balance.end(),
                       [](std::int64_t b) { return b == 0; })
               ? Decision::Isomorphic
               : Decision::NonIsomorphic;
  }
  std::vector<std::uint8_t> seen(total, 0);
  for (std::size_t t = 0; t < total; ++t)
    seen[state.color[t]] |= t < state.tuples_g ? 1 : 2;
  for (std::size_t c = 0; c < total; ++c)
    if (seen[c] == 1 || seen[c] == 2) return Decision::NonIsomorphic;
  return Decision::Isomorphic;
}

WlReport run(const Structure& g, const Structure& h, unsigned k,
             const WlOptions& options) {
  ColoringState state = initial_coloring(g, h, k, options);
  const std::uint64_t cap = options.max_rounds.value_or(state.tuple_count());
  WlReport report;
  report.k = k;
  report.variant = options.variant;
  report.class_counts.push_back(state.class_count);
  while (!state.stable && report.rounds_run < cap) {
    state = refine_round(g, h, state, options.variant, options.threads);
    ++report.rounds_run;
    report.class_counts.push_back(state.class_count);
  }
  if (state.stable) report.rounds_to_stable = state.round - 1;
  report.decision = decide(state, options.variant);
  audit(report, state.tuple_count());
  return report;
}

std::optional<std::uint64_t> min_distinguishing_round(
    const Structure& g, const Structure& h, unsigned k,
    const WlOptions& options) {
  ColoringState state = initial_coloring(g, h, k, options);
  const std::uint64_t cap = options.max_rounds.value_or(state.tuple_count());
  std::optional<std::uint64_t> found;
  WlReport audit_report;
  while (true) {
    if (decide(state, options.variant) == Decision::NonIsomorphic) {
      found = state.round;
      break;
    }
    if (state.round >= cap) break;
    state = refine_round(g, h, state, options.variant, options.threads);
    if (state.stable) {
      audit_report.rounds_to_stable = state.round - 1;
      break;
    }
  }
  audit(audit_report, state.tuple_count());
  return found;
}

std::string to_json(const WlReport& report) {
  nlohmann::ordered_json j;
  j["schema"] = "wl-report/1";
  j["decision"] = to_string(report.decision);
  j["k"] = report.k;
  j["variant"] = to_string(report.variant);
  j["rounds_run"] = report.rounds_run;
  if (report.rounds_to_stable)
    j["rounds_to_stable"] = *report.rounds_to_stable;
  else
    j["rounds_to_stable"] = nullptr;
  j["class_counts"] = report.class_counts;
  return j.dump();
}

StabilizationAudit stabilization_audit() {
  return {g_runs.load(), g_violations.load()};
}

}  // namespace wliso::wl
