#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "treegraft/generate.hpp"
#include "treegraft/refine.hpp"

namespace treegraft {

// Star-refinement benchmark: refine a star over n leaves with a generated
// source tree, per size and per engine.

struct BenchConfig {
  std::vector<std::uint32_t> sizes;
  std::vector<EngineKind> engines = {EngineKind::Fast};
  std::uint64_t seed = 0;
  Shape source_shape = Shape::Yule;
  double contraction_prob = 0.0;
  int repetitions = 3;  // reported wall time is the fastest of these
};

struct BenchRow {
  std::uint32_t n = 0;
  EngineKind engine = EngineKind::Fast;
  double wall_time_s = 0.0;
  std::uint64_t leaf_updates = 0;
  std::uint64_t loop_iterations = 0;
  bool bounds_ok = true;
};

inline constexpr const char* kBenchCsvHeader =
    "n,engine,wall_time_s,leaf_updates,loop_iterations,bounds_ok";

// leaf_updates <= n*ceil(log2 n) + n, the fast engine's work bound.
bool fast_leaf_update_bound_ok(std::uint32_t n, std::uint64_t leaf_updates);

std::vector<BenchRow> run_bench(const BenchConfig& config);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace treegraft
