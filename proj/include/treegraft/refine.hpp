#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "treegraft/tree.hpp"

namespace treegraft {

enum class EngineKind {
  Oracle,  // definition-based check per cluster, O(n) each
  Basic,   // counter accumulation per cluster, O(n) each
  Fast,    // counter accumulation shared along heaviest children, O(n log n) total
};

const char* engine_name(EngineKind k);
std::optional<EngineKind> engine_from_name(std::string_view name);

struct RefinementReport {
  EngineKind engine = EngineKind::Basic;
  std::uint64_t attempted = 0;  // nontrivial source clusters tested
  std::uint64_t accepted = 0;   // clusters structurally inserted

  // Symmetric cluster distance to the source before/after; filled only when
  // RefineOptions::compute_rf is set.
  std::uint64_t rf_before = 0;
  std::uint64_t rf_after = 0;
  bool rf_computed = false;

  // Counter meters. loop_iterations <= 2 * leaf_updates always holds; the
  // fast engine additionally keeps leaf_updates <= n*ceil(log2 n) + n.
  std::uint64_t leaf_updates = 0;
  std::uint64_t loop_iterations = 0;

  // Restructuring meters: per call at most |propagated(z)| + 1 nodes are
  // touched and a whole run stays below 3n.
  std::uint64_t apply_calls = 0;
  std::uint64_t apply_nodes_touched = 0;
  std::uint64_t apply_max_extra = 0;

  // Fast engine: most subtree re-insertions any single leaf saw; bounded by
  // floor(log2 n) because every re-insertion happens under a child of at
  // most half its parent's size.
  std::uint32_t max_leaf_subtree_adds = 0;
};

struct RefineOptions {
  bool compute_rf = true;
};

struct RefineResult {
  Tree tree;
  RefinementReport report;
};

// Refines a copy of `t` by inserting every cluster of `source` that is
// compatible with it. All engines produce the same tree:
//   clusters(result) = clusters(t) ∪ {A in clusters(source) : A compatible with t}
// (insertions never interfere because clusters of one tree are pairwise
// compatible). Inputs must share one taxon table and one leaf set.
RefineResult refine(const Tree& t, const Tree& source, EngineKind engine,
                    const RefineOptions& options = {});

RefineResult refine_oracle(const Tree& t, const Tree& source, const RefineOptions& options = {});
RefineResult refine_basic(const Tree& t, const Tree& source, const RefineOptions& options = {});
RefineResult refine_fast(const Tree& t, const Tree& source, const RefineOptions& options = {});

}  // namespace treegraft
