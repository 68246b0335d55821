#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "treegraft/tree.hpp"

namespace treegraft {

// Leaf counters over a working host tree.
//
// After clear_counters(), leaves are inserted one at a time. A node whose
// counter reaches its subtree leaf count is *complete* and folds its counter
// into its parent, which records the child in its propagation list. For any
// inserted leaf set S this maintains
//
//   counter(v) <= |S ∩ L(v)|, with equality whenever L(v) ⊆ S,
//
// so after accumulating a cluster A exactly, A is compatible with the host
// iff some node's counter equals |A| — and when that happens, the node is
// where the last insertion's upward walk stopped: A's lowest common ancestor
// (or its parent when a node for A already exists). That makes the
// compatibility test a single counter comparison, and the insertion itself a
// regrouping of the recorded propagation list.
//
// Counter work is amortized constant per inserted leaf: every propagation
// step completes a node that stays complete until the next clear, so the
// total number of while-loop iterations never exceeds twice the number of
// leaf insertions. clear_counters() only revisits nodes that were actually
// touched. Both totals are exposed as meters.
class CounterState {
 public:
  // Takes ownership of the host tree; size caches must be built.
  explicit CounterState(Tree host);

  const Tree& host() const { return host_; }

  // Hands the host back with its caches refreshed.
  Tree release_host();

  // Zeroes every touched counter and propagation list. O(#touched nodes),
  // idempotent.
  void clear_counters();

  // Inserts one leaf: sets its counter to 1 and folds complete counters
  // upward. Returns the first node on the walk left incomplete, or the root.
  // Throws UnknownTaxon for a foreign taxon, LeafAlreadyAdded if the leaf
  // was already inserted since the last clear.
  NodeId update_counter_leaf(TaxonId taxon);

  // Inserts every leaf under `u` in `source` (left to right) and returns the
  // stop node of the final insertion.
  NodeId update_counter_subtree(const Tree& source, NodeId u);

  // After accumulating exactly a cluster of `cluster_size` leaves with stop
  // node z: compatible iff the whole cluster propagated into z.
  bool is_compatible(std::uint32_t cluster_size, NodeId z) const {
    return counter_[z] == cluster_size;
  }

  // Materializes the accumulated cluster below z by regrouping the children
  // recorded in propagated(z). No-op when a node for the cluster already
  // exists (returns it); otherwise returns the new node. Never creates unary
  // nodes; touches O(|propagated(z)|) nodes. Throws InconsistentPropagation
  // if the recorded children do not sum to cluster_size.
  NodeId apply_refinement(NodeId z, std::uint32_t cluster_size);

  std::uint32_t counter(NodeId v) const { return counter_[v]; }

  // Children of v that folded a complete counter into v since the last clear.
  std::span<const NodeId> propagated(NodeId v) const { return propagated_[v]; }

  // Nodes with a nonzero counter, in first-touch order.
  std::span<const NodeId> dirty() const { return dirty_; }

  // ---- meters (cumulative over the state's lifetime) ----
  std::uint64_t leaf_updates() const { return leaf_updates_; }
  std::uint64_t loop_iterations() const { return loop_iterations_; }
  std::uint64_t apply_calls() const { return apply_calls_; }
  std::uint64_t apply_nodes_touched() const { return apply_nodes_touched_; }
  // Largest per-call difference between nodes touched and |propagated(z)|.
  std::uint64_t apply_max_extra() const { return apply_max_extra_; }

 private:
  Tree host_;
  std::vector<std::uint32_t> counter_;
  std::vector<std::vector<NodeId>> propagated_;
  std::vector<NodeId> dirty_;
  std::vector<NodeId> scratch_;  // reused traversal stack

  std::uint64_t leaf_updates_ = 0;
  std::uint64_t loop_iterations_ = 0;
  std::uint64_t apply_calls_ = 0;
  std::uint64_t apply_nodes_touched_ = 0;
  std::uint64_t apply_max_extra_ = 0;
};

}  // namespace treegraft
