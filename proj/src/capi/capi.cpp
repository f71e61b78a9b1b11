#include "wliso/wliso.h"

#include <cstring>
#include <new>

#include "json.hpp"
#include "wliso/bench.hpp"
#include "wliso/circuit.hpp"
#include "wliso/games.hpp"
#include "wliso/generators.hpp"
#include "wliso/rotation.hpp"
#include "wliso/wl.hpp"

struct wliso_graph {
  wliso::Graph value;
};
struct wliso_rotation {
  wliso::rotation::RotationSystem value;
};
struct wliso_circuit {
  wliso::circuit::CircuitDag value;
};

namespace {

thread_local std::string t_last_error;

wliso_status to_status(wliso::ErrorCode code) {
  using wliso::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return WLISO_ERR_INVALID_ARGUMENT;
    case ErrorCode::Parse: return WLISO_ERR_PARSE;
    case ErrorCode::BudgetExceeded: return WLISO_ERR_BUDGET;
    case ErrorCode::Precondition: return WLISO_ERR_PRECONDITION;
    case ErrorCode::Io: return WLISO_ERR_IO;
    case ErrorCode::Internal: return WLISO_ERR_INTERNAL;
  }
  return WLISO_ERR_INTERNAL;
}

template <class F>
wliso_status guarded(F&& body) {
  try {
    body();
    t_last_error.clear();
    return WLISO_OK;
  } catch (const wliso::Error& e) {
    t_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    t_last_error = "out of memory";
    return WLISO_ERR_BUDGET;
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return WLISO_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) wliso::fail(wliso::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

wliso::wl::WlOptions convert(const wliso_wl_options* options) {
  wliso::wl::WlOptions out;
  if (!options) return out;
  out.variant = options->variant == WLISO_COUNT_FREE ? wliso::wl::Variant::CountFree
                                                     : wliso::wl::Variant::Counting;
  if (options->max_rounds >= 0) out.max_rounds = static_cast<std::uint64_t>(options->max_rounds);
  if (options->threads) out.threads = options->threads;
  if (options->tuple_budget) out.tuple_budget = options->tuple_budget;
  return out;
}

wliso::wl::Variant convert(wliso_variant v) {
  return v == WLISO_COUNT_FREE ? wliso::wl::Variant::CountFree
                               : wliso::wl::Variant::Counting;
}

int64_t as_signed(const std::optional<std::uint64_t>& v) {
  return v ? static_cast<int64_t>(*v) : -1;
}

}  // namespace

extern "C" {

const char* wliso_version(void) { return "1.0.0"; }

const char* wliso_last_error(void) { return t_last_error.c_str(); }

const char* wliso_status_name(wliso_status status) {
  switch (status) {
    case WLISO_OK: return "ok";
    case WLISO_ERR_INVALID_ARGUMENT: return "invalid argument";
    case WLISO_ERR_PARSE: return "parse error";
    case WLISO_ERR_BUDGET: return "budget exceeded";
    case WLISO_ERR_PRECONDITION: return "precondition violated";
    case WLISO_ERR_IO: return "i/o error";
    case WLISO_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void wliso_string_free(char* s) { std::free(s); }

void wliso_wl_options_init(wliso_wl_options* options) {
  if (!options) return;
  options->variant = WLISO_COUNTING;
  options->max_rounds = -1;
  options->threads = 0;
  options->tuple_budget = 0;
}

wliso_status wliso_graph_new(size_t n, wliso_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new wliso_graph{wliso::Graph(n)};
  });
}

void wliso_graph_free(wliso_graph* g) { delete g; }

wliso_status wliso_graph_add_edge(wliso_graph* g, uint32_t u, uint32_t v) {
  return guarded([&] {
    require(g, "graph");
    g->value.add_edge(u, v);
  });
}

wliso_status wliso_graph_set_color(wliso_graph* g, uint32_t v, uint32_t color) {
  return guarded([&] {
    require(g, "graph");
    g->value.set_color(v, color);
  });
}

size_t wliso_graph_size(const wliso_graph* g) { return g ? g->value.size() : 0; }

size_t wliso_graph_edge_count(const wliso_graph* g) {
  return g ? g->value.edge_count() : 0;
}

wliso_status wliso_graph_parse(const char* text, wliso_graph** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new wliso_graph{wliso::parse_edge_list(std::string(text))};
  });
}

wliso_status wliso_graph_load(const char* path, wliso_graph** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new wliso_graph{wliso::load_edge_list(path)};
  });
}

wliso_status wliso_graph_write(const wliso_graph* g, char** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    *out = copy_string(wliso::write_edge_list(g->value));
  });
}

wliso_status wliso_graph_permuted(const wliso_graph* g, const uint32_t* perm, size_t len,
                                  wliso_graph** out) {
  return guarded([&] {
    require(g, "graph");
    require(out, "out");
    if (len && !perm) wliso::fail(wliso::ErrorCode::InvalidArgument, "perm is null");
    *out = new wliso_graph{g->value.permuted(std::span(perm, len))};
  });
}

wliso_status wliso_wl_run(const wliso_graph* g, const wliso_graph* h, unsigned k,
                          const wliso_wl_options* options, wliso_wl_result* result,
                          char** json) {
  return guarded([&] {
    require(g, "g");
    require(h, "h");
    const auto report = wliso::wl::run(g->value, h->value, k, convert(options));
    if (result) {
      result->decision = report.decision == wliso::wl::Decision::Isomorphic
                             ? WLISO_ISOMORPHIC
                             : WLISO_NON_ISOMORPHIC;
      result->rounds_run = report.rounds_run;
      result->rounds_to_stable = as_signed(report.rounds_to_stable);
    }
    if (json) *json = copy_string(wliso::wl::to_json(report));
  });
}

wliso_status wliso_wl_min_round(const wliso_graph* g, const wliso_graph* h, unsigned k,
                                const wliso_wl_options* options, int64_t* round) {
  return guarded([&] {
    require(g, "g");
    require(h, "h");
    require(round, "round");
    *round = as_signed(wliso::wl::min_distinguishing_round(g->value, h->value, k,
                                                            convert(options)));
  });
}

wliso_status wliso_wl_min_round_rotation(const wliso_rotation* a, const wliso_rotation* b,
                                         unsigned k, const wliso_wl_options* options,
                                         int64_t* round) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(round, "round");
    *round = as_signed(wliso::wl::min_distinguishing_round(
        a->value.as_structure(), b->value.as_structure(), k, convert(options)));
  });
}

wliso_status wliso_ef_depth(const wliso_graph* g, const wliso_graph* h, unsigned k,
                            wliso_game variant, uint32_t threads, int64_t* depth) {
  return guarded([&] {
    require(g, "g");
    require(h, "h");
    require(depth, "depth");
    const auto r = wliso::games::ef_depth(
        g->value, h->value, k,
        variant == WLISO_GAME_COUNTING ? wliso::games::GameVariant::Counting
                                       : wliso::games::GameVariant::Plain,
        {}, threads ? threads : wliso::default_threads());
    *depth = r.value ? static_cast<int64_t>(*r.value) : -1;
  });
}

wliso_status wliso_circuit_compile(size_t n, unsigned k, unsigned r, wliso_variant variant,
                                   wliso_circuit** out) {
  return guarded([&] {
    require(out, "out");
    *out = new wliso_circuit{wliso::circuit::compile(n, k, r, convert(variant))};
  });
}

void wliso_circuit_free(wliso_circuit* c) { delete c; }

wliso_status wliso_circuit_stats(const wliso_circuit* c, char** json) {
  return guarded([&] {
    require(c, "circuit");
    require(json, "json");
    const auto s = c->value.stats();
    nlohmann::ordered_json j;
    j["n"] = c->value.n();
    j["k"] = c->value.k();
    j["r"] = c->value.r();
    j["variant"] = wliso::wl::to_string(c->value.variant());
    j["gate_count"] = s.gate_count;
    j["input_count"] = s.input_count;
    j["wire_count"] = s.wire_count;
    j["threshold_count"] = s.threshold_count;
    j["depth"] = s.depth;
    j["macro_layers"] = s.macro_layers;
    j["gates_per_layer"] = s.gates_per_layer;
    *json = copy_string(j.dump());
  });
}

wliso_status wliso_circuit_dump(const wliso_circuit* c, char** text) {
  return guarded([&] {
    require(c, "circuit");
    require(text, "text");
    *text = copy_string(c->value.dump());
  });
}

wliso_status wliso_circuit_evaluate(const wliso_circuit* c, const wliso_graph* g,
                                    const wliso_graph* h, int* isomorphic) {
  return guarded([&] {
    require(c, "circuit");
    require(g, "g");
    require(h, "h");
    require(isomorphic, "isomorphic");
    const auto bits = wliso::circuit::bind_inputs(c->value, g->value, h->value);
    *isomorphic = wliso::circuit::evaluate(c->value, bits) ? 1 : 0;
  });
}

wliso_status wliso_circuit_check(const wliso_circuit* c, int check_layers, uint32_t threads,
                                 char** json) {
  return guarded([&] {
    require(c, "circuit");
    require(json, "json");
    const auto rep = wliso::circuit::check_equivalence_exhaustive(
        c->value, check_layers != 0, threads ? threads : wliso::default_threads());
    nlohmann::ordered_json j;
    j["pairs"] = rep.pairs;
    j["mismatches"] = rep.mismatches;
    j["one_hot_violations"] = rep.one_hot_violations;
    j["name_mismatches"] = rep.name_mismatches;
    j["equivalent"] = rep.mismatches == 0 && rep.one_hot_violations == 0 &&
                      rep.name_mismatches == 0;
    *json = copy_string(j.dump());
  });
}

wliso_status wliso_rotation_parse(const char* text, wliso_rotation** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new wliso_rotation{wliso::rotation::parse_rotation(text)};
  });
}

wliso_status wliso_rotation_load(const char* path, wliso_rotation** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new wliso_rotation{wliso::rotation::load_rotation(path)};
  });
}

void wliso_rotation_free(wliso_rotation* r) { delete r; }

wliso_status wliso_rotation_write(const wliso_rotation* r, char** out) {
  return guarded([&] {
    require(r, "rotation");
    require(out, "out");
    *out = copy_string(wliso::rotation::write_rotation(r->value));
  });
}

wliso_status wliso_rotation_validate(const wliso_rotation* r, int* valid, char** json) {
  return guarded([&] {
    require(r, "rotation");
    const auto report = wliso::rotation::validate(r->value);
    if (valid) *valid = report.valid ? 1 : 0;
    if (json) {
      nlohmann::ordered_json j;
      j["valid"] = report.valid;
      j["violations"] = report.violations;
      *json = copy_string(j.dump());
    }
  });
}

wliso_status wliso_rotation_coords(const wliso_rotation* r, uint32_t a, uint32_t b,
                                   int as_json, char** out) {
  return guarded([&] {
    require(r, "rotation");
    require(out, "out");
    const auto coords = wliso::rotation::global_coords(r->value, a, b);
    if (as_json) {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& c : coords) {
        nlohmann::ordered_json j;
        j["vertex"] = c.target;
        j["coords"] = c.coords;
        j["path"] = c.path;
        arr.push_back(std::move(j));
      }
      *out = copy_string(arr.dump());
      return;
    }
    std::string text;
    for (const auto& c : coords) {
      text += std::to_string(c.target) + ":";
      for (auto x : c.coords) text += " " + std::to_string(x);
      text += "\n";
    }
    *out = copy_string(text);
  });
}

wliso_status wliso_rotation_iso(const wliso_rotation* r1, const wliso_rotation* r2,
                                uint32_t threads, int* isomorphic, char** json) {
  return guarded([&] {
    require(r1, "r1");
    require(r2, "r2");
    const auto res = wliso::rotation::iso_decide(
        r1->value, r2->value, threads ? threads : wliso::default_threads());
    if (isomorphic) *isomorphic = res.isomorphic ? 1 : 0;
    if (json) {
      nlohmann::ordered_json j;
      j["isomorphic"] = res.isomorphic;
      j["map"] = res.map;
      if (res.origin)
        j["origin"] = {res.origin->first, res.origin->second};
      else
        j["origin"] = nullptr;
      *json = copy_string(j.dump());
    }
  });
}

wliso_status wliso_gen_tree(size_t n, uint64_t seed, wliso_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new wliso_graph{wliso::gen::gen_tree(n, seed)};
  });
}

wliso_status wliso_gen_partial_ktree(size_t n, unsigned k, uint64_t seed, wliso_graph** out) {
  return guarded([&] {
    require(out, "out");
    *out = new wliso_graph{wliso::gen::gen_partial_ktree(n, k, seed).graph};
  });
}

wliso_status wliso_gen_cfi(const wliso_graph* base, int twist, wliso_graph** out) {
  return guarded([&] {
    require(base, "base");
    require(out, "out");
    *out = new wliso_graph{wliso::gen::gen_cfi(base->value, twist != 0)};
  });
}

wliso_status wliso_gen_regular_pair(size_t n, wliso_graph** first, wliso_graph** second) {
  return guarded([&] {
    require(first, "first");
    require(second, "second");
    auto [a, b] = wliso::gen::gen_regular_pair(n);
    auto* ga = new wliso_graph{std::move(a)};
    *second = new wliso_graph{std::move(b)};
    *first = ga;
  });
}

wliso_status wliso_gen_gnp(size_t n, double p, uint64_t seed, wliso_graph** out) {
  return guarded([&] {
    require(out, "out");
    if (!(p >= 0.0 && p <= 1.0))
      wliso::fail(wliso::ErrorCode::InvalidArgument, "p must lie in [0,1]");
    *out = new wliso_graph{wliso::gen::gen_gnp(n, p, seed)};
  });
}

wliso_status wliso_gen_rotation(size_t n, uint64_t seed, wliso_rotation** out) {
  return guarded([&] {
    require(out, "out");
    *out = new wliso_rotation{wliso::gen::gen_rotation(n, seed)};
  });
}

wliso_status wliso_brute_force_iso(const wliso_graph* g, const wliso_graph* h,
                                   int* isomorphic) {
  return guarded([&] {
    require(g, "g");
    require(h, "h");
    require(isomorphic, "isomorphic");
    *isomorphic = wliso::gen::brute_force_iso(g->value, h->value) ? 1 : 0;
  });
}

wliso_status wliso_bench_bounds(const char* family, unsigned kmax, size_t nmax, size_t seeds,
                                uint32_t threads, uint64_t tuple_budget, char** table,
                                int* all_ok) {
  return guarded([&] {
    require(family, "family");
    require(table, "table");
    const auto fam = wliso::bench::parse_family(family);
    if (!fam)
      wliso::fail(wliso::ErrorCode::InvalidArgument,
                  std::string("unknown family '") + family + "' (btw|rotation)");
    wliso::bench::BenchOptions opts;
    opts.family = *fam;
    opts.kmax = kmax;
    opts.nmax = nmax;
    opts.seeds = seeds;
    opts.threads = threads ? threads : wliso::default_threads();
    if (tuple_budget) opts.tuple_budget = tuple_budget;
    const auto t = wliso::bench::bench_bounds(opts);
    if (all_ok) *all_ok = t.all_ok() ? 1 : 0;
    *table = copy_string(wliso::bench::format_table(t));
  });
}

}  // extern "C"
