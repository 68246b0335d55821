#pragma once

#include <cstdint>
#include <unordered_set>
#include <vector>

#include "treegraft/tree.hpp"

namespace treegraft {

// Canonical cluster: strictly increasing taxon ids, never empty.
struct Cluster {
  std::vector<TaxonId> members;

  bool operator==(const Cluster&) const = default;
  std::size_t size() const { return members.size(); }
};

struct ClusterHash {
  std::size_t operator()(const Cluster& c) const noexcept;
};

// Set of clusters in canonical form.
class ClusterSet {
 public:
  bool insert(Cluster c) { return set_.insert(std::move(c)).second; }
  bool contains(const Cluster& c) const { return set_.count(c) != 0; }
  std::size_t size() const { return set_.size(); }
  bool empty() const { return set_.empty(); }

  // |this \ other|
  std::uint64_t difference_count(const ClusterSet& other) const;

  bool operator==(const ClusterSet& other) const { return set_ == other.set_; }

  auto begin() const { return set_.begin(); }
  auto end() const { return set_.end(); }

 private:
  std::unordered_set<Cluster, ClusterHash> set_;
};

// Sorted taxon ids of the leaves under `u`.
Cluster leaf_set(const Tree& tree, NodeId u);

// All nontrivial clusters of the tree: one per internal non-root node, so
// singletons and the full leaf set are excluded.
ClusterSet clusters(const Tree& tree);

// |C(a) \ C(b)| — one-sided cluster difference. Both trees must share one
// taxon table and one leaf set (else LeafSetMismatch).
std::uint64_t rf_distance(const Tree& a, const Tree& b);

// |C(a) \ C(b)| + |C(b) \ C(a)| — the symmetric variant.
std::uint64_t rf_distance_symmetric(const Tree& a, const Tree& b);

// Disjoint or nested; members must be in canonical (sorted) form.
bool clusters_compatible(const Cluster& a, const Cluster& b);

// Deepest node whose subtree contains all of `a`. Naive walk-up counting;
// only the brute-force paths below use it. Throws UnknownTaxon if a member
// is not a leaf of the tree.
NodeId lca(const Tree& tree, const Cluster& a);

// True iff every child of lca(tree, a) has a leaf set disjoint from or
// contained in `a`, i.e. `a` can be inserted without breaking any existing
// cluster. Definition-based reference check, linear per call.
bool compatible_oracle(const Cluster& a, const Tree& tree);

bool same_leaf_set(const Tree& a, const Tree& b);

}  // namespace treegraft
