// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// nine hold. Run through ctest or directly; no arguments.
#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "test_helpers.hpp"
#include "treegraft/bench.hpp"
#include "treegraft/clusters.hpp"
#include "treegraft/counters.hpp"
#include "treegraft/generate.hpp"
#include "treegraft/newick.hpp"
#include "treegraft/refine.hpp"
#include "treegraft/tree.hpp"

using namespace treegraft;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Meters from every instrumented run feed the global bound checks (4, 8).
struct LoggedRun {
  std::uint32_t n = 0;
  std::uint64_t leaf_updates = 0;
  std::uint64_t loop_iterations = 0;
  std::uint64_t apply_nodes_touched = 0;
  std::uint64_t apply_max_extra = 0;
};

std::vector<LoggedRun> run_log;

void log_report(std::uint32_t n, const RefinementReport& r) {
  run_log.push_back({n, r.leaf_updates, r.loop_iterations, r.apply_nodes_touched,
                     r.apply_max_extra});
}

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- criterion 1: the CLI self-check agrees across engines ----

Outcome check_engine_agreement() {
  std::string cmd = std::string(TREEGRAFT_CLI) +
                    " verify --trials 1000 --max-n 64 --seed 20260825 >/dev/null 2>&1";
  Clock::time_point start = Clock::now();
  int rc = std::system(cmd.c_str());
  double secs = seconds_since(start);
  bool exited_ok = rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0;
  return {exited_ok && secs < 30.0,
          "verify exit " + std::to_string(exited_ok ? 0 : rc) + " in " + fmt(secs) + " s"};
}

// ---- criteria 2 + 3: accumulate random clusters and audit the counters ----

struct ClusterAudit {
  int trials = 0;
  int test_disagreements = 0;
  std::uint64_t checks = 0;
  std::uint64_t bound_violations = 0;
  std::uint64_t equality_violations = 0;
};

ClusterAudit audit_cluster_trials() {
  ClusterAudit audit;
  std::mt19937_64 rng(911);
  std::uniform_int_distribution<std::uint32_t> pick_n(3, 64);
  const double levels[] = {0.0, 0.0, 0.3, 0.7, 1.0};

  for (int trial = 0; trial < 500; ++trial) {
    auto taxa = std::make_shared<TaxonTable>();
    GenSpec hs;
    hs.leaves = pick_n(rng);
    hs.seed = rng();
    hs.shape = static_cast<Shape>(trial % 4);
    hs.contraction_prob = levels[trial % 5];
    Tree host = generate_tree(hs, taxa);

    // Odd trials draw the cluster from a second tree over the same leaves,
    // even trials draw a uniformly random subset.
    std::vector<TaxonId> cluster;
    if (trial % 2 == 1) {
      GenSpec ss = hs;
      ss.seed = rng();
      ss.shape = static_cast<Shape>((trial / 4) % 4);
      ss.contraction_prob = levels[(trial / 5) % 5];
      Tree source = generate_tree(ss, taxa);
      std::vector<NodeId> internals;
      for (NodeId v = 0; v < source.node_count(); ++v)
        if (!source.is_leaf(v) && v != source.root()) internals.push_back(v);
      if (internals.empty()) {
        cluster = source.leaf_taxa();
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, internals.size() - 1);
        for (TaxonId x : helpers::leaves_below(source, internals[pick(rng)]))
          cluster.push_back(x);
      }
    } else {
      cluster = host.leaf_taxa();
      std::shuffle(cluster.begin(), cluster.end(), rng);
      std::uniform_int_distribution<std::uint32_t> pick_k(2, hs.leaves);
      cluster.resize(std::max<std::uint32_t>(2, std::min(pick_k(rng), hs.leaves)));
    }
    std::shuffle(cluster.begin(), cluster.end(), rng);

    CounterState state(host);
    const Tree& h = state.host();
    std::vector<std::uint32_t> overlap(h.node_count(), 0);
    NodeId z = h.root();
    for (TaxonId x : cluster) {
      z = state.update_counter_leaf(x);
      for (NodeId v = h.leaf_of(x);; v = h.parent(v)) {
        ++overlap[v];
        if (v == h.root()) break;
      }
      for (NodeId v = 0; v < h.node_count(); ++v) {
        ++audit.checks;
        if (state.counter(v) > overlap[v]) ++audit.bound_violations;
        if (overlap[v] == h.size(v) && state.counter(v) != h.size(v))
          ++audit.equality_violations;
      }
    }

    Cluster sorted{cluster};
    std::sort(sorted.members.begin(), sorted.members.end());
    bool fast = state.is_compatible(static_cast<std::uint32_t>(cluster.size()), z);
    bool slow = compatible_oracle(sorted, h);
    if (fast != slow) ++audit.test_disagreements;

    RefinementReport meters;
    meters.leaf_updates = state.leaf_updates();
    meters.loop_iterations = state.loop_iterations();
    log_report(hs.leaves, meters);
    ++audit.trials;
  }
  return audit;
}

// ---- criterion 5: fast engine timing across doublings ----

struct ScalingResult {
  Outcome outcome;
  std::uint64_t bound_failures = 0;
};

double time_fast(const Tree& star, const Tree& source, std::uint32_t n,
                 std::uint64_t& bound_failures, bool log) {
  RefineOptions opt;
  opt.compute_rf = false;
  double best = 1e18;
  double spent = 0.0;
  int reps = 0;
  while (reps < 3 || (spent < 0.25 && reps < 50)) {
    Clock::time_point start = Clock::now();
    RefineResult r = refine_fast(star, source, opt);
    double secs = seconds_since(start);
    spent += secs;
    best = std::min(best, secs);
    if (!fast_leaf_update_bound_ok(n, r.report.leaf_updates)) ++bound_failures;
    if (log && reps == 0) log_report(n, r.report);
    ++reps;
  }
  return best;
}

ScalingResult check_fast_scaling() {
  ScalingResult result;
  std::vector<std::uint32_t> sizes;
  for (std::uint32_t n = 1u << 10; n <= 1u << 16; n <<= 1) sizes.push_back(n);
  const int kSeeds = 5;

  std::vector<std::vector<double>> times(kSeeds, std::vector<double>(sizes.size()));
  double biggest_time = 1e18;
  for (int seed = 0; seed < kSeeds; ++seed) {
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      std::uint32_t n = sizes[i];
      auto taxa = std::make_shared<TaxonTable>();
      GenSpec gs;
      gs.leaves = n;
      gs.seed = 7000u + static_cast<std::uint64_t>(seed) * 131u + n;
      gs.shape = Shape::Yule;
      Tree source = generate_tree(gs, taxa);
      Tree star = make_star(n, taxa);
      times[seed][i] = time_fast(star, source, n, result.bound_failures, seed == 0);
      if (n == sizes.back()) biggest_time = std::min(biggest_time, times[seed][i]);
    }
  }

  double worst_ratio = 0.0;
  std::uint32_t worst_n = 0;
  for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
    double mean = 0.0;
    for (int seed = 0; seed < kSeeds; ++seed)
      mean += times[seed][i + 1] / std::max(times[seed][i], 1e-9);
    mean /= kSeeds;
    if (mean > worst_ratio) {
      worst_ratio = mean;
      worst_n = sizes[i];
    }
  }

  bool ok = worst_ratio <= 2.6 && biggest_time < 5.0 && result.bound_failures == 0;
  result.outcome = {ok, "worst mean doubling ratio " + fmt(worst_ratio) + " at n=" +
                            std::to_string(worst_n) + ", n=65536 refined in " +
                            fmt(biggest_time) + " s, " +
                            std::to_string(result.bound_failures) + " work-bound failures"};
  return result;
}

// ---- criterion 6: basic engine shows quadratic work on caterpillars ----

Outcome check_quadratic_contrast() {
  RefineOptions opt;
  opt.compute_rf = false;
  bool ok = true;
  std::string ratios;
  for (std::uint32_t n : {256u, 512u, 1024u}) {
    auto taxa = std::make_shared<TaxonTable>();
    GenSpec gs;
    gs.leaves = n;
    gs.shape = Shape::Caterpillar;
    Tree source = generate_tree(gs, taxa);
    Tree star = make_star(n, taxa);
    RefineResult r = refine_basic(star, source, opt);
    log_report(n, r.report);
    double ratio = static_cast<double>(r.report.leaf_updates) / (static_cast<double>(n) * n);
    if (ratio < 0.1 || ratio > 1.0) ok = false;
    if (!ratios.empty()) ratios += ", ";
    ratios += fmt(ratio);
  }
  return {ok, "leaf updates / n^2 = " + ratios + " for n = 256, 512, 1024"};
}

// ---- criterion 7: refining a star recovers any binary tree exactly ----

Outcome check_star_recovery() {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<std::uint32_t> pick_n(2, 256);
  int good = 0;
  const int kTrials = 100;
  for (int trial = 0; trial < kTrials; ++trial) {
    auto taxa = std::make_shared<TaxonTable>();
    GenSpec gs;
    gs.leaves = pick_n(rng);
    gs.seed = rng();
    gs.shape = trial % 2 == 0 ? Shape::Yule : Shape::Uniform;
    Tree source = generate_tree(gs, taxa);
    Tree star = make_star(gs.leaves, taxa);
    EngineKind engine = static_cast<EngineKind>(trial % 3);
    RefineResult r = refine(star, source, engine);
    log_report(gs.leaves, r.report);
    if (rf_distance_symmetric(r.tree, source) == 0 && r.report.rf_after == 0) ++good;
  }
  return {good == kTrials, std::to_string(good) + "/" + std::to_string(kTrials) + " recovered"};
}

// ---- criterion 8 extra load: multifurcating hosts and sources ----

void run_multifurcating_instances() {
  std::mt19937_64 rng(5150);
  std::uniform_int_distribution<std::uint32_t> pick_n(64, 4096);
  const double levels[] = {0.2, 0.5, 0.9};
  RefineOptions opt;
  opt.compute_rf = false;
  for (int trial = 0; trial < 30; ++trial) {
    auto taxa = std::make_shared<TaxonTable>();
    GenSpec hs;
    hs.leaves = pick_n(rng);
    hs.seed = rng();
    hs.shape = static_cast<Shape>(trial % 4);
    hs.contraction_prob = levels[trial % 3];
    Tree host = generate_tree(hs, taxa);
    GenSpec ss = hs;
    ss.seed = rng();
    ss.shape = static_cast<Shape>((trial + 1) % 4);
    ss.contraction_prob = levels[(trial + 1) % 3];
    Tree source = generate_tree(ss, taxa);
    log_report(hs.leaves, refine_basic(host, source, opt).report);
    log_report(hs.leaves, refine_fast(host, source, opt).report);
  }
}

// ---- criterion 9: newick round trip ----

Outcome check_newick_round_trip() {
  std::mt19937_64 rng(606);
  std::uniform_int_distribution<std::uint32_t> pick_n(1, 128);
  int good = 0;
  const int kTrials = 1000;
  for (int trial = 0; trial < kTrials; ++trial) {
    GenSpec gs;
    gs.leaves = pick_n(rng);
    gs.seed = rng();
    gs.shape = static_cast<Shape>(trial % 4);
    gs.contraction_prob = (trial % 7) / 6.0;
    Tree t = generate_tree(gs);
    Tree back = parse_newick(serialize_newick(t));
    if (serialize_newick_canonical(back) == serialize_newick_canonical(t)) ++good;
  }
  return {good == kTrials, std::to_string(good) + "/" + std::to_string(kTrials) + " identical"};
}

}  // namespace

int main() {
  Outcome agreement = check_engine_agreement();
  ClusterAudit audit = audit_cluster_trials();
  ScalingResult scaling = check_fast_scaling();
  Outcome quadratic = check_quadratic_contrast();
  Outcome star = check_star_recovery();
  run_multifurcating_instances();
  Outcome round_trip = check_newick_round_trip();

  std::uint64_t amortized_bad = 0;
  std::uint64_t restructure_bad = 0;
  for (const LoggedRun& run : run_log) {
    if (run.loop_iterations > 2 * run.leaf_updates) ++amortized_bad;
    if (run.apply_max_extra > 2 || run.apply_nodes_touched > 3ull * run.n) ++restructure_bad;
  }

  struct Line {
    Outcome outcome;
    std::string what;
  };
  Line lines[] = {
      {agreement, "all engines match the closed-form refinement"},
      {{audit.test_disagreements == 0,
        std::to_string(audit.trials) + " clusters, " +
            std::to_string(audit.test_disagreements) + " disagreements with the slow oracle"},
       "single-counter compatibility test is exact"},
      {{audit.bound_violations == 0 && audit.equality_violations == 0,
        std::to_string(audit.checks) + " node checks, " +
            std::to_string(audit.bound_violations) + " above overlap, " +
            std::to_string(audit.equality_violations) + " missed completions"},
       "counters never exceed the overlap and reach it on covered subtrees"},
      {{amortized_bad == 0, std::to_string(run_log.size()) + " instrumented runs, " +
                                std::to_string(amortized_bad) + " over the 2x budget"},
       "counter work stays within twice the leaf insertions"},
      {scaling.outcome, "fast engine scales near-linearithmically"},
      {quadratic, "basic engine does quadratic work on caterpillars"},
      {star, "refining a star reproduces any binary tree"},
      {{restructure_bad == 0, std::to_string(run_log.size()) + " instrumented runs, " +
                                  std::to_string(restructure_bad) + " over budget"},
       "restructuring touches O(regrouped children) nodes, at most 3n per run"},
      {round_trip, "newick serialize/parse round trip preserves every tree"},
  };

  int failures = 0;
  for (std::size_t i = 0; i < std::size(lines); ++i) {
    const Line& line = lines[i];
    if (!line.outcome.ok) ++failures;
    std::printf("%s: %zu. %s (%s)\n", line.outcome.ok ? "PASS" : "FAIL", i + 1,
                line.what.c_str(), line.outcome.detail.c_str());
  }
  if (failures != 0) std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
