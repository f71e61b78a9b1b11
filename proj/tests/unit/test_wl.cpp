#include <map>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"
#include "wliso/generators.hpp"
#include "wliso/wl.hpp"

using namespace wliso;
using namespace testsupport;
using wl::Decision;
using wl::Variant;

namespace {

std::size_t tuple_index(std::span<const Vertex> t, std::size_t n) {
  std::size_t idx = 0;
  for (Vertex v : t) idx = idx * n + v;
  return idx;
}

// Does partition `fine` refine partition `coarse` (same index space)?
bool refines(const std::vector<std::uint32_t>& fine, const std::vector<std::uint32_t>& coarse) {
  std::map<std::uint32_t, std::uint32_t> image;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    auto [it, inserted] = image.emplace(fine[i], coarse[i]);
    if (!inserted && it->second != coarse[i]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("initial coloring of K2 at k=2") {
  Graph k2 = complete(2);
  auto s = wl::initial_coloring(k2, k2, 2);
  REQUIRE(s.tuple_count() == 8);
  CHECK(s.class_count == 2);
  // Diagonal tuples are named after (0,0), off-diagonal ones after (0,1).
  const std::vector<std::uint32_t> expected{0, 1, 1, 0, 0, 1, 1, 0};
  CHECK(s.color == expected);
}

TEST_CASE("initial coloring separates adjacent from non-adjacent pairs") {
  Graph empty(2);
  Graph k2 = complete(2);
  auto s = wl::initial_coloring(empty, k2, 2);
  CHECK(s.color[1] != s.color[4 + 1]);
  CHECK(s.color[2] != s.color[4 + 2]);
  CHECK(s.color[0] == s.color[4 + 0]);
}

TEST_CASE("diagonal and rainbow triples never share a color") {
  Graph g = petersen();
  auto s = wl::initial_coloring(g, g, 3);
  const std::size_t n = 10;
  for (Vertex v = 0; v < n; ++v) {
    const std::vector<Vertex> diag{v, v, v};
    const auto cd = s.color[tuple_index(diag, n)];
    for (Vertex a = 0; a < 3; ++a)
      for (Vertex b = 3; b < 6; ++b) {
        const std::vector<Vertex> rainbow{a, b, 7};
        CHECK(cd != s.color[tuple_index(rainbow, n)]);
      }
  }
}

TEST_CASE("isotype bits") {
  Graph g = path(3);
  const std::vector<Vertex> t{0, 1, 0};
  auto it = wl::isotype(g, t);
  auto bits = it.bits(3);
  REQUIRE(bits.size() == 18);
  // eq(0,2) set, adj(0,1) set, adj(0,0) clear.
  CHECK(bits[0 * 3 + 2]);
  CHECK_FALSE(bits[0 * 3 + 1]);
  CHECK(bits[9 + 0 * 3 + 1]);
  CHECK_FALSE(bits[9 + 0]);
}

TEST_CASE("regular pair at k=1 is a false positive, k=2 separates") {
  auto [c6, tri2] = gen::gen_regular_pair(6);
  CHECK_FALSE(gen::brute_force_iso(c6, tri2).has_value());

  auto s0 = wl::initial_coloring(c6, tri2, 1);
  auto s1 = wl::refine_round(c6, tri2, s0, Variant::Counting);
  CHECK(s1.class_count == 1);
  CHECK(s1.stable);

  wl::WlOptions opts;
  auto r1 = wl::run(c6, tri2, 1, opts);
  CHECK(r1.decision == Decision::Isomorphic);
  CHECK(r1.stabilized());
  CHECK(!wl::min_distinguishing_round(c6, tri2, 1).has_value());

  auto r2 = wl::run(c6, tri2, 2, opts);
  CHECK(r2.decision == Decision::NonIsomorphic);
  auto m = wl::min_distinguishing_round(c6, tri2, 2);
  REQUIRE(m.has_value());
  CHECK(*m >= 1);
}

TEST_CASE("K3 vs K_{1,2} separates at round 1 for k=1") {
  auto r = wl::min_distinguishing_round(complete(3), path(3), 1);
  REQUIRE(r.has_value());
  CHECK(*r == 1);
}

TEST_CASE("colors are invariant under a known isomorphism") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Graph g = gen::gen_gnp(6, 0.45, seed);
    auto perm = gen::random_permutation(6, seed + 17);
    Graph h = g.permuted(perm);
    for (unsigned k : {1U, 2U}) {
      auto s = wl::initial_coloring(g, h, k);
      const std::size_t tg = s.tuples_g;
      for (int round = 0; round < 4; ++round) {
        std::vector<Vertex> t(k, 0);
        for (std::size_t idx = 0; idx < tg; ++idx) {
          std::size_t rest = idx;
          for (unsigned i = k; i-- > 0;) {
            t[i] = static_cast<Vertex>(rest % 6);
            rest /= 6;
          }
          std::vector<Vertex> image(k);
          for (unsigned i = 0; i < k; ++i) image[i] = perm[t[i]];
          CHECK(s.color[idx] == s.color[tg + tuple_index(image, 6)]);
        }
        s = wl::refine_round(g, h, s, Variant::Counting);
      }
    }
  }
}

TEST_CASE("permuted copies are reported isomorphic") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 4 + seed % 20;
    Graph g = gen::gen_gnp(n, 0.3, seed);
    Graph h = g.permuted(gen::random_permutation(n, seed * 7 + 1));
    for (Variant v : {Variant::Counting, Variant::CountFree}) {
      wl::WlOptions o;
      o.variant = v;
      CHECK(wl::run(g, h, 1, o).decision == Decision::Isomorphic);
      if (n <= 10) CHECK(wl::run(g, h, 2, o).decision == Decision::Isomorphic);
    }
  }
}

TEST_CASE("non-isomorphic trees are separated by 1-WL") {
  for (std::size_t n = 4; n <= 7; ++n) {
    auto trees = gen::unique_up_to_iso([&] {
      std::vector<Graph> all;
      for (std::uint64_t seed = 0; seed < 60; ++seed) all.push_back(gen::gen_tree(n, seed));
      return all;
    }());
    for (std::size_t i = 0; i < trees.size(); ++i)
      for (std::size_t j = i + 1; j < trees.size(); ++j)
        CHECK(wl::run(trees[i], trees[j], 1).decision == Decision::NonIsomorphic);
  }
}

TEST_CASE("CFI over K4 fools 1-WL") {
  Graph base = complete(4);
  Graph a = gen::gen_cfi(base, false);
  Graph b = gen::gen_cfi(base, true);
  CHECK_FALSE(gen::brute_force_iso(a, b, 32).has_value());
  CHECK(wl::run(a, b, 1).decision == Decision::Isomorphic);
}

TEST_CASE("partitions refine monotonically and counting refines count-free") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen::gen_gnp(6, 0.4, seed);
    Graph h = gen::gen_gnp(6, 0.4, seed + 1000);
    for (unsigned k : {1U, 2U}) {
      auto cnt = wl::initial_coloring(g, h, k);
      auto cf = cnt;
      for (int round = 0; round < 6; ++round) {
        auto cnt2 = wl::refine_round(g, h, cnt, Variant::Counting);
        auto cf2 = wl::refine_round(g, h, cf, Variant::CountFree);
        CHECK(refines(cnt2.color, cnt.color));
        CHECK(refines(cf2.color, cf.color));
        CHECK(refines(cnt2.color, cf2.color));
        CHECK(cnt2.class_count >= cnt.class_count);
        cnt = cnt2;
        cf = cf2;
      }
    }
  }
}

TEST_CASE("color names are least tuple indices") {
  Graph g = gen::gen_gnp(5, 0.5, 3);
  Graph h = gen::gen_gnp(5, 0.5, 4);
  auto s = wl::initial_coloring(g, h, 2);
  for (int round = 0; round < 3; ++round) {
    std::map<std::uint32_t, std::size_t> first;
    for (std::size_t i = 0; i < s.color.size(); ++i) first.emplace(s.color[i], i);
    for (auto [name, idx] : first) CHECK(name == idx);
    s = wl::refine_round(g, h, s, Variant::Counting);
  }
}

TEST_CASE("results do not depend on the thread count") {
  Graph g = gen::gen_gnp(9, 0.35, 11);
  Graph h = gen::gen_gnp(9, 0.35, 12);
  for (unsigned k : {1U, 2U, 3U}) {
    auto a = wl::initial_coloring(g, h, k);
    auto b = a;
    for (int round = 0; round < 3; ++round) {
      a = wl::refine_round(g, h, a, Variant::Counting, 1);
      b = wl::refine_round(g, h, b, Variant::Counting, 4);
      CHECK(a.color == b.color);
    }
    wl::WlOptions o1, o4;
    o1.threads = 1;
    o4.threads = 4;
    CHECK(wl::to_json(wl::run(g, h, k, o1)) == wl::to_json(wl::run(g, h, k, o4)));
  }
}

TEST_CASE("permuting one input keeps decision and rounds") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph g = gen::gen_gnp(7, 0.4, seed);
    Graph h = gen::gen_gnp(7, 0.4, seed + 50);
    Graph pg = g.permuted(gen::random_permutation(7, seed + 3));
    auto a = wl::run(g, h, 2);
    auto b = wl::run(pg, h, 2);
    CHECK(a.decision == b.decision);
    CHECK(a.rounds_run == b.rounds_run);
    CHECK(wl::min_distinguishing_round(g, h, 2) == wl::min_distinguishing_round(pg, h, 2));
  }
}

TEST_CASE("max_rounds caps the run") {
  Graph g = path(8);
  Graph h = path(8).permuted(gen::random_permutation(8, 5));
  wl::WlOptions o;
  o.max_rounds = 1;
  auto r = wl::run(g, h, 1, o);
  CHECK(r.rounds_run == 1);
  CHECK_FALSE(r.stabilized());
  o.max_rounds = 0;
  CHECK(wl::run(complete(3), path(3), 1, o).decision == Decision::Isomorphic);
  CHECK(wl::run(complete(3), path(3), 2, o).decision == Decision::NonIsomorphic);
}

TEST_CASE("budget guard") {
  CHECK_THROWS_AS(wl::checked_tuple_count(100, 100, 4, 1'000'000), Error);
  try {
    wl::checked_tuple_count(100, 100, 4, 1'000'000);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
  }
  CHECK(wl::checked_tuple_count(3, 4, 2, 100) == 25);
}

TEST_CASE("report JSON") {
  auto r = wl::run(complete(3), path(3), 1);
  auto j = nlohmann::json::parse(wl::to_json(r));
  CHECK(j["schema"] == "wl-report/1");
  CHECK(j["decision"] == "non-isomorphic");
  CHECK(j["k"] == 1);
  CHECK(j["variant"] == "counting");
  CHECK(j["class_counts"].is_array());
}

TEST_CASE("colored graphs respect colors") {
  Graph a = path(3), b = path(3);
  a.set_color(0, 1);
  b.set_color(1, 1);
  CHECK(wl::run(a, b, 1).decision == Decision::NonIsomorphic);
}

TEST_CASE("empty graphs") {
  CHECK(wl::run(Graph(0), Graph(0), 1).decision == Decision::Isomorphic);
  CHECK(wl::run(Graph(0), Graph(1), 1).decision == Decision::NonIsomorphic);
}

TEST_CASE("stabilization audit stays clean") {
  auto audit = wl::stabilization_audit();
  CHECK(audit.runs > 0);
  CHECK(audit.violations == 0);
}
