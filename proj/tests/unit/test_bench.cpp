#include <sstream>

#include "doctest.h"
#include "wliso/bench.hpp"
#include "wliso/generators.hpp"
#include "wliso/rotation.hpp"

using namespace wliso;

TEST_CASE("bounds") {
  CHECK(bench::treewidth_bound(8, 1) == doctest::Approx(4 * 3.0 + 17));
  CHECK(bench::rotation_bound(8) == doctest::Approx(3 * 3.0 + 8));
  CHECK(bench::parse_family("btw") == bench::Family::Btw);
  CHECK(bench::parse_family("rotation") == bench::Family::Rotation);
  CHECK_FALSE(bench::parse_family("other").has_value());
}

TEST_CASE("treewidth instances are non-isomorphic equal-size pairs") {
  auto inst = bench::treewidth_instances(1, 7, 3);
  CHECK_FALSE(inst.empty());
  for (const auto& [g, h] : inst) {
    CHECK(g.size() == h.size());
    CHECK_FALSE(gen::brute_force_iso(g, h).has_value());
  }
}

TEST_CASE("rotation instances are non-isomorphic valid pairs") {
  auto inst = bench::rotation_instances(7, 4);
  CHECK_FALSE(inst.empty());
  for (const auto& [a, b] : inst) {
    CHECK(a.size() == b.size());
    CHECK(rotation::validate(a).valid);
    CHECK(rotation::validate(b).valid);
    CHECK_FALSE(rotation::iso_decide(a, b).isomorphic);
  }
}

TEST_CASE("small tables pass and are reproducible") {
  bench::BenchOptions o;
  o.family = bench::Family::Btw;
  o.kmax = 1;
  o.nmax = 5;
  o.seeds = 2;
  auto t = bench::bench_bounds(o);
  CHECK(t.all_ok());
  o.threads = 3;
  CHECK(bench::format_table(bench::bench_bounds(o)) == bench::format_table(t));

  o.family = bench::Family::Rotation;
  o.nmax = 5;
  auto r = bench::bench_bounds(o);
  CHECK(r.all_ok());
  for (const auto& row : r.rows) CHECK(row.dimension == 4);
}

TEST_CASE("empty family gives an empty table") {
  bench::BenchOptions o;
  o.nmax = 1;
  auto t = bench::bench_bounds(o);
  CHECK(t.rows.empty());
  auto text = bench::format_table(t);
  CHECK(text.rfind("pair\tn\tk\tdimension\trounds_measured\tbound\tok\n", 0) == 0);
}
