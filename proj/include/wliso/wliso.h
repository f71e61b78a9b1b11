/* C interface of the wliso library. Every call returns a wliso_status;
 * on failure wliso_last_error() describes the problem for the calling
 * thread. Strings returned through char** are owned by the caller and
 * released with wliso_string_free. */
#ifndef WLISO_H
#define WLISO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define WLISO_API __declspec(dllexport)
#else
#define WLISO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wliso_status {
  WLISO_OK = 0,
  WLISO_ERR_INVALID_ARGUMENT = 1,
  WLISO_ERR_PARSE = 2,
  WLISO_ERR_BUDGET = 3,
  WLISO_ERR_PRECONDITION = 4,
  WLISO_ERR_IO = 5,
  WLISO_ERR_INTERNAL = 6
} wliso_status;

typedef enum wliso_variant { WLISO_COUNTING = 0, WLISO_COUNT_FREE = 1 } wliso_variant;
typedef enum wliso_game { WLISO_GAME_PLAIN = 0, WLISO_GAME_COUNTING = 1 } wliso_game;
typedef enum wliso_decision { WLISO_ISOMORPHIC = 0, WLISO_NON_ISOMORPHIC = 1 } wliso_decision;

typedef struct wliso_graph wliso_graph;
typedef struct wliso_rotation wliso_rotation;
typedef struct wliso_circuit wliso_circuit;

typedef struct wliso_wl_options {
  wliso_variant variant;
  int64_t max_rounds;    /* < 0: run until stable (capped at 2n^k) */
  uint32_t threads;      /* 0: library default */
  uint64_t tuple_budget; /* 0: library default */
} wliso_wl_options;

typedef struct wliso_wl_result {
  wliso_decision decision;
  uint64_t rounds_run;
  int64_t rounds_to_stable; /* -1 when the round cap came first */
} wliso_wl_result;

WLISO_API const char* wliso_version(void);
WLISO_API const char* wliso_last_error(void);
WLISO_API const char* wliso_status_name(wliso_status status);
WLISO_API void wliso_string_free(char* s);
WLISO_API void wliso_wl_options_init(wliso_wl_options* options);

/* Graphs */
WLISO_API wliso_status wliso_graph_new(size_t n, wliso_graph** out);
WLISO_API void wliso_graph_free(wliso_graph* g);
WLISO_API wliso_status wliso_graph_add_edge(wliso_graph* g, uint32_t u, uint32_t v);
WLISO_API wliso_status wliso_graph_set_color(wliso_graph* g, uint32_t v, uint32_t color);
WLISO_API size_t wliso_graph_size(const wliso_graph* g);
WLISO_API size_t wliso_graph_edge_count(const wliso_graph* g);
WLISO_API wliso_status wliso_graph_parse(const char* text, wliso_graph** out);
WLISO_API wliso_status wliso_graph_load(const char* path, wliso_graph** out);
WLISO_API wliso_status wliso_graph_write(const wliso_graph* g, char** out);
/* perm[v] is the new id of v. */
WLISO_API wliso_status wliso_graph_permuted(const wliso_graph* g, const uint32_t* perm,
                                            size_t len, wliso_graph** out);

/* Weisfeiler-Leman */
WLISO_API wliso_status wliso_wl_run(const wliso_graph* g, const wliso_graph* h,
                                    unsigned k, const wliso_wl_options* options,
                                    wliso_wl_result* result, char** json);
/* *round = -1 when the pair is never distinguished. */
WLISO_API wliso_status wliso_wl_min_round(const wliso_graph* g, const wliso_graph* h,
                                          unsigned k, const wliso_wl_options* options,
                                          int64_t* round);
/* Same, on the ternary structures of two rotation systems. */
WLISO_API wliso_status wliso_wl_min_round_rotation(const wliso_rotation* a,
                                                   const wliso_rotation* b, unsigned k,
                                                   const wliso_wl_options* options,
                                                   int64_t* round);

/* Pebble games; *depth = -1 for infinity. */
WLISO_API wliso_status wliso_ef_depth(const wliso_graph* g, const wliso_graph* h,
                                      unsigned k, wliso_game variant, uint32_t threads,
                                      int64_t* depth);

/* Circuits */
WLISO_API wliso_status wliso_circuit_compile(size_t n, unsigned k, unsigned r,
                                             wliso_variant variant, wliso_circuit** out);
WLISO_API void wliso_circuit_free(wliso_circuit* c);
WLISO_API wliso_status wliso_circuit_stats(const wliso_circuit* c, char** json);
WLISO_API wliso_status wliso_circuit_dump(const wliso_circuit* c, char** text);
/* *isomorphic = 1 for the "isomorphic" verdict. */
WLISO_API wliso_status wliso_circuit_evaluate(const wliso_circuit* c, const wliso_graph* g,
                                              const wliso_graph* h, int* isomorphic);
/* Exhaustive comparison with the direct algorithm over all labeled pairs. */
WLISO_API wliso_status wliso_circuit_check(const wliso_circuit* c, int check_layers,
                                           uint32_t threads, char** json);

/* Rotation systems */
WLISO_API wliso_status wliso_rotation_parse(const char* text, wliso_rotation** out);
WLISO_API wliso_status wliso_rotation_load(const char* path, wliso_rotation** out);
WLISO_API void wliso_rotation_free(wliso_rotation* r);
WLISO_API wliso_status wliso_rotation_write(const wliso_rotation* r, char** out);
WLISO_API wliso_status wliso_rotation_validate(const wliso_rotation* r, int* valid,
                                               char** json);
/* One line "v: c1 c2 ..." per vertex, or a JSON array when as_json != 0. */
WLISO_API wliso_status wliso_rotation_coords(const wliso_rotation* r, uint32_t a,
                                             uint32_t b, int as_json, char** out);
/* json receives {"isomorphic":..,"map":[..],"origin":[a',b']}. */
WLISO_API wliso_status wliso_rotation_iso(const wliso_rotation* r1, const wliso_rotation* r2,
                                          uint32_t threads, int* isomorphic, char** json);

/* Generators and oracle */
WLISO_API wliso_status wliso_gen_tree(size_t n, uint64_t seed, wliso_graph** out);
WLISO_API wliso_status wliso_gen_partial_ktree(size_t n, unsigned k, uint64_t seed,
                                               wliso_graph** out);
WLISO_API wliso_status wliso_gen_cfi(const wliso_graph* base, int twist, wliso_graph** out);
WLISO_API wliso_status wliso_gen_regular_pair(size_t n, wliso_graph** first,
                                              wliso_graph** second);
WLISO_API wliso_status wliso_gen_gnp(size_t n, double p, uint64_t seed, wliso_graph** out);
WLISO_API wliso_status wliso_gen_rotation(size_t n, uint64_t seed, wliso_rotation** out);
WLISO_API wliso_status wliso_brute_force_iso(const wliso_graph* g, const wliso_graph* h,
                                             int* isomorphic);

/* Bound validation table; *all_ok = 1 when every row is within its bound. */
WLISO_API wliso_status wliso_bench_bounds(const char* family, unsigned kmax, size_t nmax,
                                          size_t seeds, uint32_t threads,
                                          uint64_t tuple_budget, char** table,
                                          int* all_ok);

#ifdef __cplusplus
}
#endif

#endif
