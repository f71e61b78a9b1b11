#include "doctest.h"
#include "support.hpp"
#include "wliso/generators.hpp"
#include "wliso/wl.hpp"

using namespace wliso;
using namespace testsupport;

TEST_CASE("brute force oracle") {
  Graph g = petersen();
  auto perm = gen::random_permutation(10, 42);
  Graph h = g.permuted(perm);
  auto w = gen::brute_force_iso(g, h);
  REQUIRE(w.has_value());
  for (auto [u, v] : g.edges()) CHECK(h.has_edge((*w)[u], (*w)[v]));

  auto edges = g.edges();
  Graph fewer(10, std::span(edges).subspan(1));
  CHECK_FALSE(gen::brute_force_iso(g, fewer).has_value());

  auto [c6, tri2] = gen::gen_regular_pair(6);
  CHECK_FALSE(gen::brute_force_iso(c6, tri2).has_value());

  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const std::size_t n = 3 + seed % 4;
    Graph a = gen::gen_gnp(n, 0.5, seed), b = gen::gen_gnp(n, 0.5, seed + 500);
    CHECK(gen::brute_force_iso(a, b).has_value() == permutation_iso(a, b));
  }
  CHECK_THROWS_AS(gen::brute_force_iso(Graph(11), Graph(11)), Error);
}

TEST_CASE("colors constrain the oracle") {
  Graph a = path(3), b = path(3);
  a.set_color(0, 1);
  b.set_color(2, 1);
  CHECK(gen::brute_force_iso(a, b).has_value());
  b = path(3);
  b.set_color(1, 1);
  CHECK_FALSE(gen::brute_force_iso(a, b).has_value());
}

TEST_CASE("CFI pairs") {
  SUBCASE("base K4") {
    Graph base = complete(4);
    Graph a = gen::gen_cfi(base, false), b = gen::gen_cfi(base, true);
    CHECK(a.size() == 16);
    CHECK_FALSE(gen::brute_force_iso(a, b, 32).has_value());
    CHECK(wl::run(a, b, 1).decision == wl::Decision::Isomorphic);
  }
  SUBCASE("base C3 distinguishing dimension") {
    Graph base = cycle(3);
    Graph a = gen::gen_cfi(base, false), b = gen::gen_cfi(base, true);
    CHECK_FALSE(gen::brute_force_iso(a, b).has_value());
    std::optional<unsigned> dim;
    for (unsigned k = 1; k <= 3 && !dim; ++k)
      if (wl::run(a, b, k).decision == wl::Decision::NonIsomorphic) dim = k;
    REQUIRE(dim.has_value());
    MESSAGE("CFI(C3) first distinguished at dimension " << *dim);
  }
  SUBCASE("twist parity") {
    Graph base = complete(4);
    Graph plain = gen::gen_cfi(base, false);
    const std::vector<std::pair<Vertex, Vertex>> two{{0, 1}, {2, 3}}, one{{1, 2}};
    CHECK(gen::brute_force_iso(plain, gen::gen_cfi_twisted(base, two), 32).has_value());
    CHECK(gen::brute_force_iso(gen::gen_cfi(base, true), gen::gen_cfi_twisted(base, one), 32)
              .has_value());
  }
}

TEST_CASE("partial k-trees") {
  for (std::size_t k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      auto pk = gen::gen_partial_ktree(10, k, seed);
      auto v = validate_tree_decomposition(pk.graph, pk.decomposition);
      CHECK(v.valid);
      CHECK(v.width <= k);
      CHECK(gen::exact_treewidth(pk.graph) <= k);
      CHECK(is_connected(pk.graph));
      if (k == 1) CHECK(pk.graph.edge_count() == 9);
    }
  auto forest = gen::gen_partial_ktree(12, 1, 3, 0.5, false);
  CHECK(gen::exact_treewidth(forest.graph) <= 1);
  CHECK(forest.graph.edge_count() <= 11);
}

TEST_CASE("trees from Prüfer sequences are separated by 1-WL") {
  std::vector<Graph> trees;
  for (std::uint64_t seed = 0; seed < 400; ++seed) trees.push_back(gen::gen_tree(7, seed));
  auto classes = gen::unique_up_to_iso(trees);
  // 11 trees on 7 vertices; the star has only 7 of 7^5 sequences, so it rarely shows up.
  CHECK(classes.size() <= 11);
  CHECK(classes.size() >= 9);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Graph t = gen::gen_tree(7, seed);
    CHECK(t.edge_count() == 6);
    CHECK(is_connected(t));
    for (const auto& other : classes)
      if (!gen::brute_force_iso(t, other))
        CHECK(wl::run(t, other, 1).decision == wl::Decision::NonIsomorphic);
  }
}

TEST_CASE("regular pair") {
  auto [a, b] = gen::gen_regular_pair(6);
  CHECK(a == cycle(6));
  CHECK(b == disjoint_union(cycle(3), cycle(3)));
  auto [c, d] = gen::gen_regular_pair(7);
  CHECK(c.edge_count() == d.edge_count());
}

TEST_CASE("exact treewidth") {
  CHECK(gen::exact_treewidth(gen::gen_tree(9, 1)) == 1);
  for (std::size_t r = 2; r <= 7; ++r) CHECK(gen::exact_treewidth(complete(r)) == r - 1);
  for (std::size_t n = 3; n <= 10; ++n) CHECK(gen::exact_treewidth(cycle(n)) == 2);
  CHECK(gen::exact_treewidth(petersen()) == 4);
  CHECK_THROWS_AS(gen::exact_treewidth(Graph(13)), Error);
}

TEST_CASE("seeded generators are deterministic") {
  CHECK(gen::gen_tree(12, 5) == gen::gen_tree(12, 5));
  CHECK(gen::gen_gnp(12, 0.3, 5) == gen::gen_gnp(12, 0.3, 5));
  CHECK(gen::gen_partial_ktree(12, 2, 5).graph == gen::gen_partial_ktree(12, 2, 5).graph);
  CHECK(gen::gen_rotation(9, 5).triples() == gen::gen_rotation(9, 5).triples());
  CHECK(gen::random_permutation(9, 5) == gen::random_permutation(9, 5));
  CHECK_FALSE(gen::gen_tree(12, 5) == gen::gen_tree(12, 6));
}

TEST_CASE("graph catalog sizes") {
  const std::size_t expected[] = {1, 1, 2, 4, 11, 34, 156};
  for (std::size_t n = 0; n <= 6; ++n) CHECK(gen::all_graphs(n).size() == expected[n]);
}
