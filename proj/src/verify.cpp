#include "treegraft/verify.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <string>
#include <utility>

#include "treegraft/errors.hpp"
#include "treegraft/generate.hpp"
#include "treegraft/newick.hpp"

namespace treegraft {

ClusterSet closed_form_refinement(const Tree& t, const Tree& source) {
  if (!same_leaf_set(t, source))
    throw LeafSetMismatch("closed-form refinement needs matching leaf sets");
  ClusterSet base = clusters(t);
  ClusterSet result = base;
  for (const Cluster& a : clusters(source)) {
    bool ok = true;
    for (const Cluster& b : base) {
      if (!clusters_compatible(a, b)) {
        ok = false;
        break;
      }
    }
    if (ok) result.insert(a);
  }
  return result;
}

std::vector<NamedEngine> default_verify_engines() {
  RefineOptions options;
  options.compute_rf = false;
  std::vector<NamedEngine> engines;
  engines.push_back({"oracle", [options](const Tree& t, const Tree& s) {
                       return refine_oracle(t, s, options).tree;
                     }});
  engines.push_back({"basic", [options](const Tree& t, const Tree& s) {
                       return refine_basic(t, s, options).tree;
                     }});
  engines.push_back({"fast", [options](const Tree& t, const Tree& s) {
                       return refine_fast(t, s, options).tree;
                     }});
  return engines;
}

namespace {

std::string compare_clusters(const ClusterSet& got, const ClusterSet& want) {
  if (got == want) return {};
  return "result clusters differ from closed form: " +
         std::to_string(got.difference_count(want)) + " unexpected, " +
         std::to_string(want.difference_count(got)) + " missing";
}

}  // namespace

VerifyResult run_verify(const VerifyConfig& config, const std::vector<NamedEngine>& engines) {
  VerifyResult result;
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::uint32_t> pick_n(2, std::max(2u, config.max_n));
  std::uniform_int_distribution<int> pick_shape(0, 3);
  constexpr double kContractionLevels[] = {0.0, 0.0, 0.25, 0.6, 1.0};
  std::uniform_int_distribution<int> pick_contraction(0, 4);

  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    GenSpec a;
    a.leaves = pick_n(rng);
    a.seed = rng();
    a.shape = static_cast<Shape>(pick_shape(rng));
    a.contraction_prob = kContractionLevels[pick_contraction(rng)];
    GenSpec b = a;
    b.seed = rng();
    b.shape = static_cast<Shape>(pick_shape(rng));
    b.contraction_prob = kContractionLevels[pick_contraction(rng)];

    auto taxa = std::make_shared<TaxonTable>();
    Tree t = generate_tree(a, taxa);
    Tree source = generate_tree(b, taxa);
    ClusterSet want = closed_form_refinement(t, source);

    for (const NamedEngine& engine : engines) {
      std::string detail;
      try {
        Tree out = engine.run(t, source);
        validate_tree(out);
        if (!same_leaf_set(out, t))
          detail = "result leaf set differs from the input leaf set";
        else
          detail = compare_clusters(clusters(out), want);
      } catch (const std::exception& e) {
        detail = std::string("engine threw: ") + e.what();
      }
      if (!detail.empty()) {
        result.failure = VerifyFailure{trial, engine.name, serialize_newick(t),
                                       serialize_newick(source), detail};
        result.trials_run = trial + 1;
        return result;
      }
    }
    ++result.trials_run;
  }
  return result;
}

}  // namespace treegraft
