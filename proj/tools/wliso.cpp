// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "wliso/wliso.h"

namespace {

enum Exit : int {
  kIsomorphic = 0,
  kNonIsomorphic = 1,
  kInconclusive = 2,
  kBudget = 3,
  kUsage = 64,
  kNoInput = 66,
  kSoftware = 70,
};

struct GraphDeleter {
  void operator()(wliso_graph* g) const { wliso_graph_free(g); }
};
struct RotationDeleter {
  void operator()(wliso_rotation* r) const { wliso_rotation_free(r); }
};
struct CircuitDeleter {
  void operator()(wliso_circuit* c) const { wliso_circuit_free(c); }
};
struct StringDeleter {
  void operator()(char* s) const { wliso_string_free(s); }
};
using GraphPtr = std::unique_ptr<wliso_graph, GraphDeleter>;
using RotationPtr = std::unique_ptr<wliso_rotation, RotationDeleter>;
using CircuitPtr = std::unique_ptr<wliso_circuit, CircuitDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

// Thrown after the diagnostic has been printed.
struct Failure {
  int code;
};

int exit_for(wliso_status s) {
  switch (s) {
    case WLISO_OK: return 0;
    case WLISO_ERR_PARSE:
    case WLISO_ERR_INVALID_ARGUMENT:
    case WLISO_ERR_PRECONDITION: return kUsage;
    case WLISO_ERR_IO: return kNoInput;
    case WLISO_ERR_BUDGET: return kBudget;
    case WLISO_ERR_INTERNAL: return kSoftware;
  }
  return kSoftware;
}

void check(wliso_status s, const std::string& context, std::optional<int> budget_exit = {}) {
  if (s == WLISO_OK) return;
  std::cerr << "wliso: " << context << ": " << wliso_status_name(s) << ": "
            << wliso_last_error() << '\n';
  if (s == WLISO_ERR_BUDGET && budget_exit) throw Failure{*budget_exit};
  throw Failure{exit_for(s)};
}

GraphPtr load_graph(const std::string& path) {
  wliso_graph* g = nullptr;
  check(wliso_graph_load(path.c_str(), &g), path);
  return GraphPtr(g);
}

RotationPtr load_rotation(const std::string& path) {
  wliso_rotation* r = nullptr;
  check(wliso_rotation_load(path.c_str(), &r), path);
  return RotationPtr(r);
}

void emit(const std::string& text, const std::string& output) {
  if (output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) {
    std::cerr << "wliso: cannot write " << output << '\n';
    throw Failure{kNoInput};
  }
  out << text;
}

std::string number_or(int64_t v, const char* none) {
  return v < 0 ? std::string(none) : std::to_string(v);
}

uint32_t threads_from_env() {
  if (const char* s = std::getenv("WLISO_THREADS")) return static_cast<uint32_t>(std::atoi(s));
  return 0;
}

wliso_variant parse_wl_variant(const std::string& s) {
  return s == "count-free" ? WLISO_COUNT_FREE : WLISO_COUNTING;
}

struct IsoArgs {
  std::vector<std::string> files;
  unsigned k = 2;
  std::string variant = "counting";
  int64_t max_rounds = -1;
  bool json = false;
  bool rotation = false;
};

int cmd_iso(const IsoArgs& a) {
  if (a.rotation) {
    auto r1 = load_rotation(a.files[0]);
    auto r2 = load_rotation(a.files[1]);
    for (const auto* r : {r1.get(), r2.get()}) {
      int valid = 0;
      char* report = nullptr;
      check(wliso_rotation_validate(r, &valid, &report), "validate");
      StringPtr keep(report);
      if (!valid) {
        std::cerr << "wliso: invalid rotation system: " << report << '\n';
        return kUsage;
      }
    }
    int iso = 0;
    char* json = nullptr;
    check(wliso_rotation_iso(r1.get(), r2.get(), threads_from_env(), &iso, &json), "iso");
    StringPtr keep(json);
    if (a.json)
      std::cout << json << '\n';
    else
      std::cout << "decision: " << (iso ? "isomorphic" : "non-isomorphic") << '\n';
    return iso ? kIsomorphic : kNonIsomorphic;
  }
  auto g = load_graph(a.files[0]);
  auto h = load_graph(a.files[1]);
  wliso_wl_options opts;
  wliso_wl_options_init(&opts);
  opts.variant = parse_wl_variant(a.variant);
  opts.max_rounds = a.max_rounds;
  opts.threads = threads_from_env();
  wliso_wl_result result{};
  char* json = nullptr;
  check(wliso_wl_run(g.get(), h.get(), a.k, &opts, &result, &json), "iso", kInconclusive);
  StringPtr keep(json);
  if (a.json) {
    std::cout << json << '\n';
  } else {
    std::cout << "decision: "
              << (result.decision == WLISO_ISOMORPHIC ? "isomorphic" : "non-isomorphic")
              << "\nk: " << a.k << "\nvariant: " << a.variant
              << "\nrounds_run: " << result.rounds_run
              << "\nrounds_to_stable: " << number_or(result.rounds_to_stable, "null") << '\n';
  }
  if (result.decision == WLISO_NON_ISOMORPHIC) return kNonIsomorphic;
  if (result.rounds_to_stable < 0) {
    std::cerr << "wliso: round cap reached before stabilization\n";
    return kInconclusive;
  }
  return kIsomorphic;
}

struct DepthArgs {
  std::vector<std::string> files;
  unsigned k = 3;
  std::string variant = "counting";
};

int cmd_depth(const DepthArgs& a) {
  auto g = load_graph(a.files[0]);
  auto h = load_graph(a.files[1]);
  const bool counting = a.variant == "counting";
  int64_t depth = 0;
  check(wliso_ef_depth(g.get(), h.get(), a.k,
                       counting ? WLISO_GAME_COUNTING : WLISO_GAME_PLAIN,
                       threads_from_env(), &depth),
        "depth", kBudget);
  std::string wl_col = "-";
  if (a.k >= 2) {
    wliso_wl_options opts;
    wliso_wl_options_init(&opts);
    opts.variant = counting ? WLISO_COUNTING : WLISO_COUNT_FREE;
    opts.threads = threads_from_env();
    int64_t round = 0;
    check(wliso_wl_min_round(g.get(), h.get(), a.k - 1, &opts, &round), "wl", kBudget);
    wl_col = number_or(round, "never");
  }
  std::cout << "pair\tk\tvariant\tdepth\twl_dimension\twl_round\n"
            << "0\t" << a.k << '\t' << a.variant << '\t' << number_or(depth, "∞") << '\t'
            << (a.k >= 2 ? std::to_string(a.k - 1) : std::string("-")) << '\t' << wl_col
            << '\n';
  return 0;
}

struct BenchArgs {
  std::string family = "btw";
  unsigned kmax = 1;
  std::size_t nmax = 8;
  std::size_t seeds = 4;
};

int cmd_bench(const BenchArgs& a) {
  char* table = nullptr;
  int ok = 0;
  check(wliso_bench_bounds(a.family.c_str(), a.kmax, a.nmax, a.seeds, threads_from_env(), 0,
                           &table, &ok),
        "bench-bounds", kBudget);
  StringPtr keep(table);
  std::cout << table;
  return ok ? 0 : 1;
}

struct CircuitArgs {
  std::size_t n = 3;
  unsigned k = 2;
  unsigned r = 1;
  std::string variant = "counting";
  bool emit = false;
  bool check = false;
  bool layers = false;
};

int cmd_circuit(const CircuitArgs& a) {
  wliso_circuit* raw = nullptr;
  check(wliso_circuit_compile(a.n, a.k, a.r, parse_wl_variant(a.variant), &raw), "circuit",
        kBudget);
  CircuitPtr c(raw);
  char* text = nullptr;
  if (a.emit) {
    check(wliso_circuit_dump(c.get(), &text), "circuit");
    StringPtr keep(text);
    std::cout << text;
    return 0;
  }
  if (a.check) {
    check(wliso_circuit_check(c.get(), a.layers ? 1 : 0, threads_from_env(), &text), "circuit",
          kBudget);
    StringPtr keep(text);
    std::cout << text << '\n';
    return std::string(text).find("\"equivalent\":true") != std::string::npos ? 0 : 1;
  }
  check(wliso_circuit_stats(c.get(), &text), "circuit");
  StringPtr keep(text);
  std::cout << text << '\n';
  return 0;
}

struct GenArgs {
  std::string kind;
  std::size_t n = 8;
  unsigned k = 1;
  uint64_t seed = 1;
  double p = 0.5;
  std::string base;
  bool twist = false;
  unsigned index = 0;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  char* text = nullptr;
  if (a.kind == "rotation") {
    wliso_rotation* r = nullptr;
    check(wliso_gen_rotation(a.n, a.seed, &r), "gen");
    RotationPtr keep(r);
    check(wliso_rotation_write(r, &text), "gen");
  } else {
    wliso_graph* g = nullptr;
    GraphPtr other;
    if (a.kind == "tree") {
      check(wliso_gen_tree(a.n, a.seed, &g), "gen");
    } else if (a.kind == "ktree") {
      check(wliso_gen_partial_ktree(a.n, a.k, a.seed, &g), "gen");
    } else if (a.kind == "gnp") {
      check(wliso_gen_gnp(a.n, a.p, a.seed, &g), "gen");
    } else if (a.kind == "cfi") {
      if (a.base.empty()) {
        std::cerr << "wliso: gen cfi needs --base\n";
        return kUsage;
      }
      auto base = load_graph(a.base);
      check(wliso_gen_cfi(base.get(), a.twist ? 1 : 0, &g), "gen");
    } else if (a.kind == "regular") {
      wliso_graph* second = nullptr;
      check(wliso_gen_regular_pair(a.n, &g, &second), "gen");
      if (a.index == 1) std::swap(g, second);
      other.reset(second);
    } else {
      std::cerr << "wliso: unknown generator '" << a.kind << "'\n";
      return kUsage;
    }
    GraphPtr keep(g);
    check(wliso_graph_write(g, &text), "gen");
  }
  StringPtr keep(text);
  emit(text, a.output);
  return 0;
}

struct CoordsArgs {
  std::string file;
  uint32_t a = 0;
  uint32_t b = 0;
  bool json = false;
};

int cmd_coords(const CoordsArgs& a) {
  auto r = load_rotation(a.file);
  char* text = nullptr;
  check(wliso_rotation_coords(r.get(), a.a, a.b, a.json ? 1 : 0, &text), "coords");
  StringPtr keep(text);
  std::cout << text;
  if (a.json) std::cout << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weisfeiler-Leman isomorphism toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(wliso_version()));

  IsoArgs iso;
  auto* iso_cmd = app.add_subcommand("iso", "Decide isomorphism with k-dimensional WL");
  iso_cmd->add_option("files", iso.files, "Two edge-list files")->required()->expected(2);
  iso_cmd->add_option("--k", iso.k, "Dimension")->check(CLI::Range(1U, 64U));
  iso_cmd->add_option("--variant", iso.variant)
      ->check(CLI::IsMember({"counting", "count-free"}));
  iso_cmd->add_option("--max-rounds", iso.max_rounds)->check(CLI::NonNegativeNumber);
  iso_cmd->add_flag("--json", iso.json, "Print the wl-report/1 JSON");
  iso_cmd->add_flag("--rotation", iso.rotation, "Inputs are rotation systems");

  DepthArgs depth;
  auto* depth_cmd = app.add_subcommand("depth", "Pebble-game distinguishing depth");
  depth_cmd->add_option("files", depth.files)->required()->expected(2);
  depth_cmd->add_option("--k", depth.k, "Pebbles")->check(CLI::Range(1U, 16U));
  depth_cmd->add_option("--variant", depth.variant)
      ->check(CLI::IsMember({"plain", "counting"}));

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench-bounds", "Round-bound validation table");
  bench_cmd->add_option("--family", bench.family)->check(CLI::IsMember({"btw", "rotation"}));
  bench_cmd->add_option("--kmax", bench.kmax)->check(CLI::Range(0U, 8U));
  bench_cmd->add_option("--nmax", bench.nmax);
  bench_cmd->add_option("--seeds", bench.seeds);

  CircuitArgs circ;
  auto* circ_cmd = app.add_subcommand("circuit", "Compile the WL threshold circuit");
  circ_cmd->add_option("--n", circ.n);
  circ_cmd->add_option("--k", circ.k);
  circ_cmd->add_option("--r", circ.r);
  circ_cmd->add_option("--variant", circ.variant)
      ->check(CLI::IsMember({"counting", "count-free"}));
  circ_cmd->add_flag("--emit", circ.emit, "Print the gate list");
  circ_cmd->add_flag("--check", circ.check, "Exhaustive equivalence with the direct algorithm");
  circ_cmd->add_flag("--layers", circ.layers, "With --check, also compare layer color names");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
  gen_cmd->add_option("kind", gen.kind, "tree|ktree|gnp|cfi|regular|rotation")
      ->required()
      ->check(CLI::IsMember({"tree", "ktree", "gnp", "cfi", "regular", "rotation"}));
  gen_cmd->add_option("--n", gen.n);
  gen_cmd->add_option("--k", gen.k);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--p", gen.p);
  gen_cmd->add_option("--base", gen.base, "CFI base graph file");
  gen_cmd->add_flag("--twist", gen.twist);
  gen_cmd->add_option("--index", gen.index, "Member of the regular pair")
      ->check(CLI::Range(0U, 1U));
  gen_cmd->add_option("-o,--output", gen.output);

  CoordsArgs coords;
  auto* coords_cmd = app.add_subcommand("coords", "Dump global coordinates of a rotation system");
  coords_cmd->add_option("file", coords.file)->required();
  coords_cmd->add_option("--a", coords.a)->required();
  coords_cmd->add_option("--b", coords.b)->required();
  coords_cmd->add_flag("--json", coords.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*iso_cmd) return cmd_iso(iso);
    if (*depth_cmd) return cmd_depth(depth);
    if (*bench_cmd) return cmd_bench(bench);
    if (*circ_cmd) return cmd_circuit(circ);
    if (*gen_cmd) return cmd_gen(gen);
    if (*coords_cmd) return cmd_coords(coords);
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
