#include "treegraft/bench.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <iomanip>
#include <limits>
#include <memory>
#include <ostream>

namespace treegraft {

bool fast_leaf_update_bound_ok(std::uint32_t n, std::uint64_t leaf_updates) {
  if (n <= 1) return leaf_updates == 0;
  std::uint64_t ceil_log = std::bit_width(n - 1u);
  return leaf_updates <= std::uint64_t{n} * ceil_log + n;
}

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  std::vector<BenchRow> rows;
  RefineOptions options;
  options.compute_rf = false;
  const int reps = std::max(1, config.repetitions);

  for (std::uint32_t n : config.sizes) {
    auto taxa = std::make_shared<TaxonTable>();
    GenSpec gs;
    gs.leaves = n;
    gs.seed = config.seed + n;
    gs.shape = config.source_shape;
    gs.contraction_prob = config.contraction_prob;
    Tree source = generate_tree(gs, taxa);
    Tree star = make_star(n, taxa);

    for (EngineKind engine : config.engines) {
      double best = std::numeric_limits<double>::infinity();
      RefinementReport report;
      for (int r = 0; r < reps; ++r) {
        auto start = std::chrono::steady_clock::now();
        RefineResult res = refine(star, source, engine, options);
        auto stop = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(stop - start).count();
        if (secs < best) {
          best = secs;
          report = res.report;
        }
      }
      BenchRow row;
      row.n = n;
      row.engine = engine;
      row.wall_time_s = best;
      row.leaf_updates = report.leaf_updates;
      row.loop_iterations = report.loop_iterations;
      row.bounds_ok =
          report.loop_iterations <= 2 * report.leaf_updates &&
          (engine != EngineKind::Fast || fast_leaf_update_bound_ok(n, report.leaf_updates));
      rows.push_back(row);
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchCsvHeader << '\n';
  for (const BenchRow& row : rows) {
    out << row.n << ',' << engine_name(row.engine) << ',' << std::setprecision(9)
        << row.wall_time_s << ',' << row.leaf_updates << ',' << row.loop_iterations << ','
        << (row.bounds_ok ? 1 : 0) << '\n';
  }
}

}  // namespace treegraft
