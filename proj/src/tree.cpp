#include "treegraft/tree.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "treegraft/errors.hpp"

namespace treegraft {

std::uint32_t Tree::depth(NodeId v) const {
  if (!depths_current_) ensure_depth_cache();
  return depth_[v];
}

void Tree::ensure_depth_cache() const {
  if (depths_current_) return;
  depth_.assign(nodes_.size(), 0);
  if (root_ != kNoNode) {
    std::vector<NodeId> stack{root_};
    depth_[root_] = 1;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (NodeId c : nodes_[v].children) {
        depth_[c] = depth_[v] + 1;
        stack.push_back(c);
      }
    }
  }
  depths_current_ = true;
}

std::vector<TaxonId> Tree::leaf_taxa() const {
  std::vector<TaxonId> out;
  out.reserve(leaf_count_);
  for (const Node& n : nodes_) {
    if (n.children.empty()) out.push_back(n.taxon);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> Tree::postorder() const {
  std::vector<NodeId> out;
  if (root_ == kNoNode) return out;
  out.reserve(nodes_.size());
  // Push root, pop into `out`, then reverse: children end up before parents.
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (NodeId c : nodes_[v].children) stack.push_back(c);
  }
  std::reverse(out.begin(), out.end());
  return out;
}

NodeId Tree::new_leaf(TaxonId taxon) {
  NodeId id = static_cast<NodeId>(nodes_.size());
  Node n;
  n.taxon = taxon;
  n.size = 1;
  nodes_.push_back(std::move(n));
  depths_current_ = false;
  return id;
}

NodeId Tree::new_internal() {
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.emplace_back();
  depths_current_ = false;
  return id;
}

void Tree::add_child(NodeId parent, NodeId child) {
  Node& p = nodes_[parent];
  nodes_[child].parent = parent;
  nodes_[child].pos_in_parent = static_cast<std::uint32_t>(p.children.size());
  p.children.push_back(child);
}

void Tree::build_indices() {
  leaf_count_ = 0;
  leaf_by_taxon_.clear();
  for (NodeId v : postorder()) {
    Node& n = nodes_[v];
    if (n.children.empty()) {
      n.size = 1;
      ++leaf_count_;
      if (n.taxon == kNoTaxon) throw UnlabeledLeaf("leaf node without a taxon");
      if (n.taxon >= leaf_by_taxon_.size()) leaf_by_taxon_.resize(n.taxon + 1, kNoNode);
      if (leaf_by_taxon_[n.taxon] != kNoNode)
        throw DuplicateLeafLabel("duplicate leaf: " + taxa_->label(n.taxon));
      leaf_by_taxon_[n.taxon] = v;
    } else {
      std::uint32_t total = 0;
      for (NodeId c : n.children) total += nodes_[c].size;
      n.size = total;
    }
  }
  depths_current_ = false;
  ensure_depth_cache();
}

void Tree::detach_child(NodeId parent, NodeId child) {
  // Swap-remove so each detach is O(1); sibling order is not preserved.
  Node& p = nodes_[parent];
  std::uint32_t pos = nodes_[child].pos_in_parent;
  assert(pos < p.children.size() && p.children[pos] == child);
  NodeId last = p.children.back();
  p.children[pos] = last;
  nodes_[last].pos_in_parent = pos;
  p.children.pop_back();
  nodes_[child].parent = kNoNode;
}

NodeId Tree::group_children(NodeId parent, std::span<const NodeId> members) {
  assert(!members.empty());
  NodeId fresh = new_internal();
  std::uint32_t total = 0;
  for (NodeId w : members) {
    assert(nodes_[w].parent == parent);
    detach_child(parent, w);
    add_child(fresh, w);
    total += nodes_[w].size;
  }
  nodes_[fresh].size = total;
  add_child(parent, fresh);
  depths_current_ = false;
  return fresh;
}

void validate_tree(const Tree& tree) {
  if (tree.empty()) throw Error("validate: empty tree");
  NodeId root = tree.root();
  if (root == kNoNode || root >= tree.node_count()) throw Error("validate: bad root id");
  if (tree.parent(root) != kNoNode) throw Error("validate: root has a parent");

  std::uint32_t reached = 0;
  std::uint32_t leaves = 0;
  std::vector<NodeId> stack{root};
  std::vector<bool> seen(tree.node_count(), false);
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (seen[v]) throw Error("validate: node reached twice (cycle or shared child)");
    seen[v] = true;
    ++reached;

    const Node& n = tree.node(v);
    if (n.children.size() == 1) throw Error("validate: unary internal node");
    if (n.children.empty()) {
      ++leaves;
      if (n.taxon == kNoTaxon) throw Error("validate: unlabeled leaf");
      if (tree.leaf_of(n.taxon) != v) throw Error("validate: leaf index does not map back");
      if (n.size != 1) throw Error("validate: leaf size != 1");
    } else {
      if (n.taxon != kNoTaxon) throw Error("validate: internal node carries a taxon");
      std::uint32_t total = 0;
      std::uint32_t pos = 0;
      for (NodeId c : n.children) {
        if (c >= tree.node_count()) throw Error("validate: child id out of range");
        if (tree.parent(c) != v) throw Error("validate: child's parent link disagrees");
        if (tree.node(c).pos_in_parent != pos) throw Error("validate: stale pos_in_parent");
        if (tree.depth(c) != tree.depth(v) + 1) throw Error("validate: depth cache mismatch");
        total += tree.size(c);
        stack.push_back(c);
        ++pos;
      }
      if (total != n.size) throw Error("validate: size cache mismatch");
    }
  }
  if (tree.depth(root) != 1) throw Error("validate: root depth != 1");
  if (reached != tree.node_count()) throw Error("validate: unreachable nodes in arena");
  if (leaves != tree.leaf_count()) throw Error("validate: leaf count cache mismatch");
}

}  // namespace treegraft
