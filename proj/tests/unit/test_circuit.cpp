#include "doctest.h"
#include "support.hpp"
#include "wliso/circuit.hpp"
#include "wliso/generators.hpp"
#include "wliso/wl.hpp"

using namespace wliso;
using namespace testsupport;
using circuit::GateKind;
using wl::Variant;

namespace {

bool direct_verdict(const Graph& g, const Graph& h, unsigned r, Variant v) {
  wl::WlOptions o;
  o.variant = v;
  o.max_rounds = r;
  return wl::run(g, h, 2, o).decision == wl::Decision::Isomorphic;
}

}  // namespace

TEST_CASE("structure of compiled circuits") {
  for (Variant v : {Variant::Counting, Variant::CountFree}) {
    for (unsigned r = 0; r <= 2; ++r) {
      auto c = circuit::compile(3, 2, r, v);
      auto st = c.stats();
      CHECK(st.macro_layers == r + 2);
      CHECK(st.gates_per_layer.size() == r + 2);
      CHECK(c.tuple_count() == 18);
      CHECK(c.input_count() == 18 * 8);
      for (std::uint32_t id = 0; id < c.gates().size(); ++id) {
        const auto& g = c.gates()[id];
        for (auto f : c.fanin(id)) CHECK(f < id);
        if (g.kind == GateKind::Threshold) CHECK(g.layer >= 1);
        if (g.kind == GateKind::Input) CHECK(c.fanin(id).empty());
      }
      if (v == Variant::CountFree) CHECK(st.threshold_count == 0);
      else CHECK(st.threshold_count > 0);
    }
  }
}

TEST_CASE("size and depth accounting") {
  std::vector<std::size_t> depth, gates;
  for (unsigned r = 0; r <= 3; ++r) {
    auto c = circuit::compile(3, 2, r, Variant::Counting);
    auto st = c.stats();
    depth.push_back(st.depth);
    gates.push_back(st.gate_count);
    CHECK(circuit::estimate_gates(3, 2, r, Variant::Counting) >= st.gate_count);
  }
  for (std::size_t i = 2; i < depth.size(); ++i) {
    CHECK(depth[i] - depth[i - 1] == depth[1] - depth[0]);
    // Every refinement layer costs the same, so gates / r only shrinks.
    CHECK(gates[i] - gates[i - 1] == gates[2] - gates[1]);
    CHECK(gates[i] * 1 <= gates[1] * i);
  }
  // One refinement layer is O(n^{3k}) gates with n^{3k} = 729 here.
  CHECK(gates[2] - gates[1] <= 729 * 40);
}

TEST_CASE("compile limits") {
  CHECK_THROWS_AS(circuit::compile(6, 2, 1, Variant::Counting), Error);
  CHECK_THROWS_AS(circuit::compile(3, 1, 1, Variant::Counting), Error);
  CHECK_THROWS_AS(circuit::compile(3, 2, 9, Variant::Counting), Error);
}

TEST_CASE("bind_inputs") {
  auto c = circuit::compile(2, 2, 0, Variant::Counting);
  Graph k2 = complete(2);
  auto same = circuit::bind_inputs(c, k2, k2);
  const std::size_t half = same.size() / 2;
  CHECK(std::equal(same.begin(), same.begin() + half, same.begin() + half));

  Graph e2(2);
  auto diff = circuit::bind_inputs(c, k2, e2);
  // Tuple (0,1): adjacency bit (0,1) at offset k^2 + 1 = 5.
  CHECK(diff[1 * 8 + 5] == 1);
  CHECK(diff[(4 + 1) * 8 + 5] == 0);

  auto c4 = circuit::compile(4, 2, 0, Variant::Counting);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Graph g = gen::gen_gnp(4, 0.5, seed), h = gen::gen_gnp(4, 0.5, seed + 9);
    auto bits = circuit::bind_inputs(c4, g, h);
    for (int side = 0; side < 2; ++side) {
      const Graph& x = side ? h : g;
      for (Vertex u0 = 0; u0 < 4; ++u0)
        for (Vertex u1 = 0; u1 < 4; ++u1) {
          const std::size_t a = side * 16 + u0 * 4 + u1;
          const Vertex t[2] = {u0, u1};
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
              CHECK(bits[a * 8 + i * 2 + j] == (t[i] == t[j]));
              CHECK(bits[a * 8 + 4 + i * 2 + j] == (t[i] != t[j] && x.has_edge(t[i], t[j])));
            }
        }
    }
  }
  CHECK_THROWS_AS(circuit::bind_inputs(c4, complete(3), complete(4)), Error);
}

TEST_CASE("verdicts on small examples") {
  for (Variant v : {Variant::Counting, Variant::CountFree})
    for (unsigned r = 0; r <= 2; ++r) {
      auto c = circuit::compile(3, 2, r, v);
      Graph p = path(3);
      Graph q = p.permuted(std::vector<Vertex>{2, 0, 1});
      CHECK(circuit::evaluate(c, circuit::bind_inputs(c, p, q)));
      CHECK_FALSE(circuit::evaluate(c, circuit::bind_inputs(c, complete(3), p)));
    }
}

TEST_CASE("circuit matches the direct algorithm on random n=4 pairs") {
  for (Variant v : {Variant::Counting, Variant::CountFree})
    for (unsigned r = 0; r <= 2; ++r) {
      auto c = circuit::compile(4, 2, r, v);
      std::vector<std::vector<std::uint8_t>> batch;
      std::vector<bool> expected;
      for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Graph g = gen::gen_gnp(4, 0.5, seed), h = gen::gen_gnp(4, 0.5, seed + 77);
        batch.push_back(circuit::bind_inputs(c, g, h));
        expected.push_back(direct_verdict(g, h, r, v));
        CHECK(circuit::evaluate(c, batch.back()) == expected.back());
      }
      CHECK(circuit::evaluate_batch(c, batch, 2) == expected);
    }
}

TEST_CASE("exhaustive equivalence with layer names at n=3") {
  for (Variant v : {Variant::Counting, Variant::CountFree}) {
    auto c = circuit::compile(3, 2, 2, v);
    auto rep = circuit::check_equivalence_exhaustive(c, true, 2);
    CHECK(rep.pairs == 36);
    CHECK(rep.mismatches == 0);
    CHECK(rep.one_hot_violations == 0);
    CHECK(rep.name_mismatches == 0);
  }
}

TEST_CASE("dump is stable") {
  auto a = circuit::compile(3, 2, 1, Variant::CountFree).dump();
  auto b = circuit::compile(3, 2, 1, Variant::CountFree).dump();
  CHECK(a == b);
  CHECK(a.rfind("3 2 1 count-free\n", 0) == 0);
}
