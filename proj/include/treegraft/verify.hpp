#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "treegraft/clusters.hpp"
#include "treegraft/refine.hpp"
#include "treegraft/tree.hpp"

namespace treegraft {

// Randomized cross-checking of refinement engines against each other and
// against the closed-form answer computed directly from cluster sets.

struct VerifyConfig {
  std::uint64_t trials = 1000;
  std::uint32_t max_n = 64;
  std::uint64_t seed = 0;
};

struct VerifyFailure {
  std::uint64_t trial = 0;
  std::string engine;        // engine that disagreed
  std::string t_newick;      // the tree being refined
  std::string source_newick; // the tree supplying clusters
  std::string detail;
};

struct VerifyResult {
  std::uint64_t trials_run = 0;
  std::optional<VerifyFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

struct NamedEngine {
  std::string name;
  std::function<Tree(const Tree&, const Tree&)> run;
};

// Every cluster of `t` plus every cluster of `source` compatible with all of
// them; the unique answer any correct engine must produce.
ClusterSet closed_form_refinement(const Tree& t, const Tree& source);

std::vector<NamedEngine> default_verify_engines();

VerifyResult run_verify(const VerifyConfig& config,
                        const std::vector<NamedEngine>& engines = default_verify_engines());

}  // namespace treegraft
