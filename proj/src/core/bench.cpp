#include "wliso/bench.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "wliso/generators.hpp"
#include "wliso/wl.hpp"

namespace wliso::bench {

std::optional<Family> parse_family(const std::string& s) {
  if (s == "btw") return Family::Btw;
  if (s == "rotation") return Family::Rotation;
  return std::nullopt;
}

const char* to_string(Family f) { return f == Family::Btw ? "btw" : "rotation"; }

double treewidth_bound(std::size_t n, unsigned k) {
  return 2.0 * (k + 1) * log2n(n) + 8.0 * k + 9.0;
}

double rotation_bound(std::size_t n) { return 3.0 * log2n(n) + 8.0; }

bool BenchTable::all_ok() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return r.ok; });
}

BoundRow measure_treewidth_pair(const Graph& g, const Graph& h, unsigned k,
                                unsigned threads, std::uint64_t tuple_budget) {
  BoundRow row;
  row.n = std::max(g.size(), h.size());
  row.k = k;
  row.dimension = 4 * k + 3;
  row.bound = treewidth_bound(row.n, k);
  wl::WlOptions opts;
  opts.variant = wl::Variant::Counting;
  opts.threads = threads;
  opts.tuple_budget = tuple_budget;
  row.rounds = wl::min_distinguishing_round(g, h, row.dimension, opts);
  row.ok = row.rounds && static_cast<double>(*row.rounds) < row.bound;
  return row;
}

BoundRow measure_rotation_pair(const rotation::RotationSystem& a,
                               const rotation::RotationSystem& b, unsigned threads) {
  BoundRow row;
  row.n = std::max(a.size(), b.size());
  row.dimension = 4;
  row.bound = rotation_bound(row.n);
  wl::WlOptions opts;
  opts.variant = wl::Variant::CountFree;
  opts.threads = threads;
  row.rounds =
      wl::min_distinguishing_round(a.as_structure(), b.as_structure(), 4, opts);
  row.ok = row.rounds && static_cast<double>(*row.rounds) < row.bound;
  return row;
}

std::vector<std::pair<Graph, Graph>> treewidth_instances(unsigned k, std::size_t nmax,
                                                         std::size_t seeds) {
  std::vector<std::pair<Graph, Graph>> out;
  for (std::size_t n = k + 2; n <= nmax; ++n)
    for (std::size_t s = 0; s < seeds; ++s) {
      const std::uint64_t base = mix64((n << 32) ^ (std::uint64_t{k} << 16) ^ s);
      Graph g = gen::gen_partial_ktree(n, k, base).graph;
      for (std::uint64_t attempt = 1; attempt <= 32; ++attempt) {
        Graph h = gen::gen_partial_ktree(n, k, mix64(base + attempt)).graph;
        if (!gen::brute_force_iso(g, h, 12)) {
          out.emplace_back(std::move(g), std::move(h));
          break;
        }
      }
    }
  return out;
}

std::vector<std::pair<rotation::RotationSystem, rotation::RotationSystem>>
rotation_instances(std::size_t nmax, std::size_t seeds) {
  std::vector<std::pair<rotation::RotationSystem, rotation::RotationSystem>> out;
  for (std::size_t n = 3; n <= nmax; ++n)
    for (std::size_t s = 0; s < seeds; ++s) {
      const std::uint64_t base = mix64((n << 32) ^ (s << 1) ^ 0x726f74ULL);
      for (std::uint64_t attempt = 0; attempt < 32; ++attempt) {
        const std::uint64_t seed = mix64(base + attempt);
        auto a = gen::gen_rotation(n, seed);
        rotation::RotationSystem b;
        if (s % 2 == 0) {
          auto options = gen::rotations_of(a.graph(), 8, mix64(seed ^ 1));
          if (options.size() < 2) continue;
          b = options[1 + mix64(seed ^ 2) % (options.size() - 1)];
        } else {
          b = gen::gen_rotation(n, mix64(seed ^ 3));
        }
        if (b.triples() == a.triples() || rotation::iso_decide(a, b).isomorphic) continue;
        out.emplace_back(std::move(a), std::move(b));
        break;
      }
    }
  return out;
}

BenchTable bench_bounds(const BenchOptions& options) {
  BenchTable table;
  table.family = options.family;
  if (options.family == Family::Btw) {
    struct Job {
      Graph g, h;
      unsigned k;
    };
    std::vector<Job> jobs;
    for (unsigned k = 1; k <= options.kmax; ++k)
      for (auto& [g, h] : treewidth_instances(k, options.nmax, options.seeds))
        jobs.push_back({std::move(g), std::move(h), k});
    std::vector<std::optional<BoundRow>> rows(jobs.size());
    parallel_for(jobs.size(), options.threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        try {
          rows[i] = measure_treewidth_pair(jobs[i].g, jobs[i].h, jobs[i].k, 1,
                                           options.tuple_budget);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::BudgetExceeded) throw;
        }
      }
    });
    for (auto& r : rows) {
      if (!r) {
        ++table.skipped;
        continue;
      }
      r->index = table.rows.size();
      table.rows.push_back(*r);
    }
    return table;
  }
  const auto pairs = rotation_instances(options.nmax, options.seeds);
  std::vector<BoundRow> rows(pairs.size());
  parallel_for(pairs.size(), options.threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      rows[i] = measure_rotation_pair(pairs[i].first, pairs[i].second, 1);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].index = i;
    table.rows.push_back(rows[i]);
  }
  return table;
}

std::string format_table(const BenchTable& table) {
  std::ostringstream out;
  out << "pair\tn\tk\tdimension\trounds_measured\tbound\tok\n";
  char bound[32];
  for (const BoundRow& r : table.rows) {
    std::snprintf(bound, sizeof bound, "%.3f", r.bound);
    out << r.index << '\t' << r.n << '\t' << r.k << '\t' << r.dimension << '\t'
        << (r.rounds ? std::to_string(*r.rounds) : std::string("never")) << '\t' << bound
        << '\t' << (r.ok ? "yes" : "no") << '\n';
  }
  if (table.skipped) out << "skipped\t" << table.skipped << '\n';
  out << "overall\t" << (table.all_ok() ? "pass" : "fail") << '\n';
  return out.str();
}

}  // namespace wliso::bench
