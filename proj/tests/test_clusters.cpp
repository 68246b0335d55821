#include <doctest.h>

#include <memory>
#include <random>
#include <vector>

#include "test_helpers.hpp"
#include "treegraft/clusters.hpp"
#include "treegraft/errors.hpp"
#include "treegraft/newick.hpp"

using namespace treegraft;
using helpers::cluster_of;

TEST_CASE("cluster enumeration") {
  auto taxa = std::make_shared<TaxonTable>();
  Tree t = parse_newick("((a,b),(c,d));", taxa);
  ClusterSet cs = clusters(t);
  CHECK(cs.size() == 2);
  CHECK(cs.contains(cluster_of(*taxa, {"a", "b"})));
  CHECK(cs.contains(cluster_of(*taxa, {"c", "d"})));
  CHECK(!cs.contains(cluster_of(*taxa, {"a", "c"})));

  CHECK(clusters(parse_newick("(a,b,c,d);")).empty());
  CHECK(clusters(parse_newick("x;")).empty());
}

TEST_CASE("one-sided and symmetric distances") {
  auto taxa = std::make_shared<TaxonTable>();
  Tree a = parse_newick("((a,b),c,d);", taxa);
  Tree b = parse_newick("((c,d),a,b);", taxa);
  CHECK(rf_distance(a, b) == 1);
  CHECK(rf_distance(b, a) == 1);
  CHECK(rf_distance_symmetric(a, b) == 2);
  CHECK(rf_distance(a, a) == 0);

  Tree star = parse_newick("(a,b,c,d);", taxa);
  Tree bin = parse_newick("((a,b),(c,d));", taxa);
  CHECK(rf_distance(star, bin) == 0);
  CHECK(rf_distance(bin, star) == 2);
  CHECK(rf_distance_symmetric(star, bin) == 2);
}

TEST_CASE("distances require one leaf set") {
  auto taxa = std::make_shared<TaxonTable>();
  Tree a = parse_newick("((a,b),c);", taxa);
  Tree b = parse_newick("((a,b),d);", taxa);
  CHECK_THROWS_AS(rf_distance(a, b), LeafSetMismatch);

  Tree c = parse_newick("((a,b),c);");  // same labels, separate table
  CHECK_THROWS_AS(rf_distance(a, c), LeafSetMismatch);
  CHECK(!same_leaf_set(a, c));
  CHECK(same_leaf_set(a, parse_newick("(c,(b,a));", taxa)));
}

TEST_CASE("pairwise compatibility matches set algebra") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<TaxonId> pick(0, 19);
  std::uniform_int_distribution<int> len(1, 12);
  for (int i = 0; i < 2000; ++i) {
    helpers::LeafSet sa, sb;
    for (int k = len(rng); k > 0; --k) sa.insert(pick(rng));
    for (int k = len(rng); k > 0; --k) sb.insert(pick(rng));
    Cluster a{std::vector<TaxonId>(sa.begin(), sa.end())};
    Cluster b{std::vector<TaxonId>(sb.begin(), sb.end())};
    CHECK(clusters_compatible(a, b) == helpers::disjoint_or_nested(sa, sb));
  }
}

TEST_CASE("lca and the definition-based compatibility check") {
  auto taxa = std::make_shared<TaxonTable>();
  Tree t = parse_newick("((a,b),c);", taxa);

  NodeId ab = lca(t, cluster_of(*taxa, {"a", "b"}));
  CHECK(leaf_set(t, ab).members == cluster_of(*taxa, {"a", "b"}).members);
  CHECK(lca(t, cluster_of(*taxa, {"b", "c"})) == t.root());
  CHECK(lca(t, cluster_of(*taxa, {"a"})) == t.leaf_of(taxa->find("a")));

  CHECK(compatible_oracle(cluster_of(*taxa, {"a", "b"}), t));
  CHECK(!compatible_oracle(cluster_of(*taxa, {"b", "c"}), t));
  CHECK(!compatible_oracle(cluster_of(*taxa, {"a", "c"}), t));
  CHECK(compatible_oracle(cluster_of(*taxa, {"a", "b", "c"}), t));

  taxa->intern("zz");
  CHECK_THROWS_AS(lca(t, cluster_of(*taxa, {"zz", "a"})), UnknownTaxon);
  CHECK_THROWS_AS(compatible_oracle(cluster_of(*taxa, {"zz"}), t), UnknownTaxon);
}

TEST_CASE("cluster set difference counting") {
  auto taxa = std::make_shared<TaxonTable>();
  Tree a = parse_newick("(((a,b),c),(d,e));", taxa);
  Tree b = parse_newick("(((a,b),e),(d,c));", taxa);
  ClusterSet ca = clusters(a);
  ClusterSet cb = clusters(b);
  CHECK(ca.size() == 3);
  CHECK(ca.difference_count(cb) == 2);  // {a,b} survives; {a,b,c} and {d,e} do not
  CHECK(ca.difference_count(ca) == 0);
  CHECK(!(ca == cb));
}
