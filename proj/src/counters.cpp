#include "treegraft/counters.hpp"

#include <cassert>
#include <string>
#include <utility>

#include "treegraft/errors.hpp"

namespace treegraft {

CounterState::CounterState(Tree host) : host_(std::move(host)) {
  counter_.assign(host_.node_count(), 0);
  propagated_.resize(host_.node_count());
}

Tree CounterState::release_host() {
  host_.ensure_depth_cache();
  return std::move(host_);
}

void CounterState::clear_counters() {
  for (NodeId v : dirty_) {
    counter_[v] = 0;
    propagated_[v].clear();
  }
  dirty_.clear();
}

NodeId CounterState::update_counter_leaf(TaxonId taxon) {
  NodeId v = host_.leaf_of(taxon);
  if (v == kNoNode)
    throw UnknownTaxon("taxon id " + std::to_string(taxon) + " is not a leaf of the host");
  if (counter_[v] != 0)
    throw LeafAlreadyAdded("leaf '" + host_.label(v) + "' inserted twice without a clear");

  ++leaf_updates_;
  counter_[v] = 1;
  dirty_.push_back(v);

  // Fold complete counters upward. Each iteration completes one node, and a
  // complete node never re-enters the walk before the next clear.
  NodeId root = host_.root();
  while (counter_[v] == host_.size(v) && v != root) {
    NodeId p = host_.parent(v);
    if (counter_[p] == 0) dirty_.push_back(p);
    counter_[p] += counter_[v];
    propagated_[p].push_back(v);
    v = p;
    ++loop_iterations_;
  }
  return v;
}

NodeId CounterState::update_counter_subtree(const Tree& source, NodeId u) {
  NodeId stop = kNoNode;
  scratch_.clear();
  scratch_.push_back(u);
  while (!scratch_.empty()) {
    NodeId v = scratch_.back();
    scratch_.pop_back();
    if (source.is_leaf(v)) {
      stop = update_counter_leaf(source.taxon(v));
    } else {
      // Push right to left so leaves are inserted in stored order.
      std::span<const NodeId> c = source.children(v);
      for (std::size_t i = c.size(); i-- > 0;) scratch_.push_back(c[i]);
    }
  }
  assert(stop != kNoNode);
  return stop;
}

NodeId CounterState::apply_refinement(NodeId z, std::uint32_t cluster_size) {
  ++apply_calls_;
  std::size_t prop_count = propagated_[z].size();

  std::uint64_t carried = 0;
  for (NodeId w : propagated_[z]) carried += counter_[w];
  if (carried != cluster_size)
    throw InconsistentPropagation("propagated children carry " + std::to_string(carried) +
                                  " leaves, expected " + std::to_string(cluster_size));

  auto record = [&](std::uint64_t touched) {
    apply_nodes_touched_ += touched;
    std::uint64_t extra = touched > prop_count ? touched - prop_count : 0;
    if (extra > apply_max_extra_) apply_max_extra_ = extra;
  };

  // Already present: the whole accumulation flowed through one existing node
  // — either z itself (every child propagated) or a single child that covers
  // the cluster exactly.
  if (prop_count == host_.children(z).size()) {
    record(1);
    return z;
  }
  if (prop_count == 1 && host_.size(propagated_[z].front()) == cluster_size) {
    record(1);
    return propagated_[z].front();
  }

  std::vector<NodeId> members;
  members.swap(propagated_[z]);  // z's list is rebuilt below
  NodeId fresh = host_.group_children(z, members);
  record(members.size() + 1);

  // The new node is complete by construction: its counter equals its size,
  // its children are exactly the recorded propagators, and it stands in for
  // them in z's list.
  counter_.push_back(cluster_size);
  propagated_.push_back(std::move(members));
  dirty_.push_back(fresh);
  propagated_[z].push_back(fresh);
  assert(counter_.size() == host_.node_count());
  assert(propagated_.size() == host_.node_count());
  return fresh;
}

}  // namespace treegraft
