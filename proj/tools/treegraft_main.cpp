#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "treegraft/bench.hpp"
#include "treegraft/errors.hpp"
#include "treegraft/generate.hpp"
#include "treegraft/newick.hpp"
#include "treegraft/refine.hpp"
#include "treegraft/verify.hpp"

namespace {

using namespace treegraft;

// Files hold one Newick tree per line; commands read the first line.
std::string read_tree_line(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return line;
  }
  throw EmptyTree("no tree found in '" + path + "'");
}

void print_report(const RefinementReport& r) {
  std::cerr << "engine=" << engine_name(r.engine) << '\n'
            << "attempted=" << r.attempted << '\n'
            << "accepted=" << r.accepted << '\n';
  if (r.rf_computed)
    std::cerr << "rf_before=" << r.rf_before << '\n' << "rf_after=" << r.rf_after << '\n';
  std::cerr << "leaf_updates=" << r.leaf_updates << '\n'
            << "loop_iterations=" << r.loop_iterations << '\n'
            << "apply_calls=" << r.apply_calls << '\n'
            << "apply_nodes_touched=" << r.apply_nodes_touched << '\n'
            << "apply_max_extra=" << r.apply_max_extra << '\n'
            << "max_leaf_subtree_adds=" << r.max_leaf_subtree_adds << '\n';
}

int cmd_refine(const std::string& t_path, const std::string& source_path,
               const std::string& engine_str, bool report, bool canonical) {
  auto taxa = std::make_shared<TaxonTable>();
  Tree t = parse_newick(read_tree_line(t_path), taxa);
  Tree source = parse_newick(read_tree_line(source_path), taxa);
  RefineResult result = refine(t, source, *engine_from_name(engine_str));
  std::cout << (canonical ? serialize_newick_canonical(result.tree)
                          : serialize_newick(result.tree))
            << '\n';
  if (report) print_report(result.report);
  return 0;
}

int cmd_rf(const std::string& a_path, const std::string& b_path, bool symmetric) {
  auto taxa = std::make_shared<TaxonTable>();
  Tree a = parse_newick(read_tree_line(a_path), taxa);
  Tree b = parse_newick(read_tree_line(b_path), taxa);
  std::cout << (symmetric ? rf_distance_symmetric(a, b) : rf_distance(a, b)) << '\n';
  return 0;
}

int cmd_gen(const GenSpec& spec) {
  std::cout << serialize_newick_canonical(generate_tree(spec)) << '\n';
  return 0;
}

int cmd_verify(const VerifyConfig& config) {
  VerifyResult result = run_verify(config);
  if (result.ok()) {
    std::cout << "ok: " << result.trials_run
              << " trials, all engines agree with the closed form\n";
    return 0;
  }
  const VerifyFailure& f = *result.failure;
  std::cerr << "disagreement in trial " << f.trial << ", engine " << f.engine << ": " << f.detail
            << '\n';
  std::cout << f.t_newick << '\n' << f.source_newick << '\n';
  return 1;
}

int cmd_bench(BenchConfig config, const std::vector<std::string>& engine_names) {
  for (std::size_t i = 1; i < config.sizes.size(); ++i)
    if (config.sizes[i] <= config.sizes[i - 1]) throw Error("bench sizes must be ascending");
  config.engines.clear();
  for (const std::string& name : engine_names) config.engines.push_back(*engine_from_name(name));
  write_bench_csv(std::cout, run_bench(config));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy tree refinement toolkit"};
  app.require_subcommand(1);

  auto engine_values = CLI::IsMember({"fast", "basic", "oracle"});
  auto shape_values = CLI::IsMember({"yule", "uniform", "caterpillar", "balanced"});

  std::string refine_t, refine_source, refine_engine = "fast";
  bool refine_report = false, refine_canonical = false;
  CLI::App* refine_cmd =
      app.add_subcommand("refine", "insert every compatible cluster of a source tree");
  refine_cmd->add_option("t", refine_t, "Newick file with the tree to refine")->required();
  refine_cmd->add_option("source", refine_source, "Newick file with the tree supplying clusters")
      ->required();
  refine_cmd->add_option("--engine", refine_engine, "fast|basic|oracle")->check(engine_values);
  refine_cmd->add_flag("--report", refine_report, "key=value report on standard error");
  refine_cmd->add_flag("--canonical", refine_canonical, "order children by smallest leaf label");

  std::string rf_a, rf_b;
  bool rf_symmetric = false;
  CLI::App* rf_cmd = app.add_subcommand("rf", "cluster distance between two trees");
  rf_cmd->add_option("a", rf_a, "Newick file")->required();
  rf_cmd->add_option("b", rf_b, "Newick file")->required();
  rf_cmd->add_flag("--symmetric", rf_symmetric, "count differences in both directions");

  GenSpec gen_spec;
  std::string gen_shape = "yule";
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a random tree");
  gen_cmd->add_option("--leaves", gen_spec.leaves, "number of leaves")->required();
  gen_cmd->add_option("--seed", gen_spec.seed, "random seed");
  gen_cmd->add_option("--shape", gen_shape, "yule|uniform|caterpillar|balanced")
      ->check(shape_values);
  gen_cmd->add_option("--contract", gen_spec.contraction_prob,
                      "per-edge probability of collapsing an internal edge");

  VerifyConfig verify_config;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "cross-check all engines on random instances");
  verify_cmd->add_option("--trials", verify_config.trials, "random instances to try");
  verify_cmd->add_option("--max-n", verify_config.max_n, "largest leaf count");
  verify_cmd->add_option("--seed", verify_config.seed, "random seed");

  BenchConfig bench_config;
  std::vector<std::string> bench_engines = {"fast"};
  std::string bench_shape = "yule";
  CLI::App* bench_cmd = app.add_subcommand("bench", "star-refinement benchmark, CSV on stdout");
  bench_cmd->add_option("--sizes", bench_config.sizes, "ascending leaf counts")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--engines", bench_engines, "engines to time")
      ->delimiter(',')
      ->check(engine_values);
  bench_cmd->add_option("--seed", bench_config.seed, "random seed");
  bench_cmd->add_option("--shape", bench_shape, "source tree shape")->check(shape_values);
  bench_cmd->add_option("--contract", bench_config.contraction_prob,
                        "source tree contraction probability");
  bench_cmd->add_option("--reps", bench_config.repetitions, "timing repetitions, fastest wins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*refine_cmd)
      return cmd_refine(refine_t, refine_source, refine_engine, refine_report, refine_canonical);
    if (*rf_cmd) return cmd_rf(rf_a, rf_b, rf_symmetric);
    if (*gen_cmd) {
      gen_spec.shape = *shape_from_name(gen_shape);
      return cmd_gen(gen_spec);
    }
    if (*verify_cmd) return cmd_verify(verify_config);
    if (*bench_cmd) {
      bench_config.source_shape = *shape_from_name(bench_shape);
      return cmd_bench(bench_config, bench_engines);
    }
  } catch (const LeafSetMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
