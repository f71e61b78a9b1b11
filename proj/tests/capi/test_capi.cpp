// Exercises the shared library through its C header only.
#include <cstdlib>
#include <cstring>
#include <string>

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"
#include "wliso/wliso.h"

namespace {

wliso_graph* parse(const char* text) {
  wliso_graph* g = nullptr;
  REQUIRE(wliso_graph_parse(text, &g) == WLISO_OK);
  return g;
}

const char* kC6 = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";
const char* kTwoTriangles = "6 6\n0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n";

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(wliso_version()) > 0);
  CHECK(std::string(wliso_status_name(WLISO_ERR_BUDGET)) == "budget exceeded");
}

TEST_CASE("graph handles") {
  wliso_graph* g = nullptr;
  REQUIRE(wliso_graph_new(3, &g) == WLISO_OK);
  CHECK(wliso_graph_add_edge(g, 0, 1) == WLISO_OK);
  CHECK(wliso_graph_add_edge(g, 0, 1) == WLISO_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(wliso_last_error()) > 0);
  CHECK(wliso_graph_add_edge(g, 0, 9) == WLISO_ERR_INVALID_ARGUMENT);
  CHECK(wliso_graph_size(g) == 3);
  CHECK(wliso_graph_edge_count(g) == 1);
  char* text = nullptr;
  REQUIRE(wliso_graph_write(g, &text) == WLISO_OK);
  CHECK(std::string(text) == "3 1\n0 1\n");
  wliso_string_free(text);
  wliso_graph_free(g);

  wliso_graph* bad = nullptr;
  CHECK(wliso_graph_parse("2 5\n", &bad) == WLISO_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(wliso_graph_load("/nonexistent", &bad) == WLISO_ERR_IO);
  CHECK(wliso_graph_parse(nullptr, &bad) == WLISO_ERR_INVALID_ARGUMENT);
}

TEST_CASE("WL through the C interface") {
  wliso_graph* a = parse(kC6);
  wliso_graph* b = parse(kTwoTriangles);
  wliso_wl_options o;
  wliso_wl_options_init(&o);
  wliso_wl_result r{};
  char* json = nullptr;
  REQUIRE(wliso_wl_run(a, b, 1, &o, &r, &json) == WLISO_OK);
  CHECK(r.decision == WLISO_ISOMORPHIC);
  CHECK(r.rounds_to_stable >= 0);
  auto j = nlohmann::json::parse(json);
  CHECK(j["schema"] == "wl-report/1");
  wliso_string_free(json);

  REQUIRE(wliso_wl_run(a, b, 2, &o, &r, nullptr) == WLISO_OK);
  CHECK(r.decision == WLISO_NON_ISOMORPHIC);

  int64_t round = 0;
  REQUIRE(wliso_wl_min_round(a, b, 1, &o, &round) == WLISO_OK);
  CHECK(round == -1);
  REQUIRE(wliso_wl_min_round(a, b, 2, &o, &round) == WLISO_OK);
  CHECK(round >= 1);

  o.tuple_budget = 10;
  CHECK(wliso_wl_run(a, b, 2, &o, &r, nullptr) == WLISO_ERR_BUDGET);

  int64_t depth = 0;
  REQUIRE(wliso_ef_depth(a, a, 2, WLISO_GAME_PLAIN, 1, &depth) == WLISO_OK);
  CHECK(depth == -1);

  int iso = 0;
  REQUIRE(wliso_brute_force_iso(a, b, &iso) == WLISO_OK);
  CHECK(iso == 0);

  uint32_t perm[6] = {5, 3, 1, 0, 2, 4};
  wliso_graph* p = nullptr;
  REQUIRE(wliso_graph_permuted(a, perm, 6, &p) == WLISO_OK);
  REQUIRE(wliso_brute_force_iso(a, p, &iso) == WLISO_OK);
  CHECK(iso == 1);
  CHECK(wliso_graph_permuted(a, perm, 5, &p) == WLISO_ERR_INVALID_ARGUMENT);

  wliso_graph_free(p);
  wliso_graph_free(a);
  wliso_graph_free(b);
}

TEST_CASE("circuits through the C interface") {
  wliso_circuit* c = nullptr;
  REQUIRE(wliso_circuit_compile(3, 2, 1, WLISO_COUNT_FREE, &c) == WLISO_OK);
  char* json = nullptr;
  REQUIRE(wliso_circuit_stats(c, &json) == WLISO_OK);
  auto st = nlohmann::json::parse(json);
  CHECK(st["threshold_count"] == 0);
  CHECK(st["macro_layers"] == 3);
  wliso_string_free(json);

  wliso_graph* k3 = parse("3 3\n0 1\n1 2\n0 2\n");
  wliso_graph* p3 = parse("3 2\n0 1\n1 2\n");
  int iso = 1;
  REQUIRE(wliso_circuit_evaluate(c, k3, p3, &iso) == WLISO_OK);
  CHECK(iso == 0);
  REQUIRE(wliso_circuit_evaluate(c, p3, p3, &iso) == WLISO_OK);
  CHECK(iso == 1);

  REQUIRE(wliso_circuit_check(c, 0, 1, &json) == WLISO_OK);
  auto rep = nlohmann::json::parse(json);
  CHECK(rep["equivalent"] == true);
  CHECK(rep["pairs"] == 36);
  wliso_string_free(json);

  wliso_circuit* big = nullptr;
  CHECK(wliso_circuit_compile(9, 2, 1, WLISO_COUNTING, &big) == WLISO_ERR_BUDGET);
  wliso_graph_free(k3);
  wliso_graph_free(p3);
  wliso_circuit_free(c);
}

TEST_CASE("rotation systems through the C interface") {
  wliso_rotation* r = nullptr;
  REQUIRE(wliso_rotation_parse("0: 1 2\n1: 0 2\n2: 0 1\n", &r) == WLISO_OK);
  int valid = 0;
  char* json = nullptr;
  REQUIRE(wliso_rotation_validate(r, &valid, &json) == WLISO_OK);
  CHECK(valid == 1);
  wliso_string_free(json);
  char* text = nullptr;
  REQUIRE(wliso_rotation_coords(r, 0, 1, 0, &text) == WLISO_OK);
  CHECK(std::string(text).find("2: 1") != std::string::npos);
  wliso_string_free(text);

  wliso_rotation* q = nullptr;
  REQUIRE(wliso_gen_rotation(7, 4, &q) == WLISO_OK);
  int iso = 1;
  REQUIRE(wliso_rotation_iso(r, q, 1, &iso, &json) == WLISO_OK);
  CHECK(iso == 0);
  wliso_string_free(json);
  REQUIRE(wliso_rotation_iso(q, q, 1, &iso, &json) == WLISO_OK);
  CHECK(iso == 1);
  wliso_string_free(json);

  wliso_rotation* bad = nullptr;
  CHECK(wliso_rotation_parse("0: 1\n1: 2\n", &bad) == WLISO_ERR_PARSE);
  wliso_rotation_free(r);
  wliso_rotation_free(q);
}

TEST_CASE("bench through the C interface") {
  char* table = nullptr;
  int ok = 0;
  REQUIRE(wliso_bench_bounds("btw", 1, 5, 1, 1, 0, &table, &ok) == WLISO_OK);
  CHECK(ok == 1);
  CHECK(std::string(table).find("overall\tpass") != std::string::npos);
  wliso_string_free(table);
  CHECK(wliso_bench_bounds("nope", 1, 5, 1, 1, 0, &table, &ok) == WLISO_ERR_INVALID_ARGUMENT);
}
