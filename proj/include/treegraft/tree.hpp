#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "treegraft/taxa.hpp"

namespace treegraft {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = 0xffffffffu;

struct Node {
  NodeId parent = kNoNode;
  std::vector<NodeId> children;     // ordered; empty for leaves
  std::uint32_t pos_in_parent = 0;  // index of this node in parent's child list
  TaxonId taxon = kNoTaxon;         // set for leaves only
  std::uint32_t size = 0;           // number of leaves in this subtree
};

// Arena-backed rooted tree with ordered children. Leaves carry taxon ids from
// a shared TaxonTable; internal nodes always have at least two children.
//
// Subtree sizes stay exact through restructuring. Depths (root = 1) are kept
// in a lazy cache: restructuring only marks it stale and the next depth()
// read recomputes the whole cache in one pass, so restructuring itself stays
// proportional to the number of nodes it moves.
class Tree {
 public:
  Tree() = default;
  explicit Tree(std::shared_ptr<const TaxonTable> taxa) : taxa_(std::move(taxa)) {}

  NodeId root() const { return root_; }
  std::uint32_t node_count() const { return static_cast<std::uint32_t>(nodes_.size()); }
  std::uint32_t leaf_count() const { return leaf_count_; }
  bool empty() const { return nodes_.empty(); }

  const Node& node(NodeId v) const { return nodes_[v]; }
  NodeId parent(NodeId v) const { return nodes_[v].parent; }
  std::span<const NodeId> children(NodeId v) const { return nodes_[v].children; }
  bool is_leaf(NodeId v) const { return nodes_[v].children.empty(); }
  TaxonId taxon(NodeId v) const { return nodes_[v].taxon; }
  std::uint32_t size(NodeId v) const { return nodes_[v].size; }
  std::uint32_t depth(NodeId v) const;

  const std::shared_ptr<const TaxonTable>& taxa() const { return taxa_; }
  const std::string& label(NodeId leaf) const { return taxa_->label(nodes_[leaf].taxon); }

  // Leaf node for a taxon, kNoNode if the taxon is not in this tree.
  NodeId leaf_of(TaxonId t) const {
    return t < leaf_by_taxon_.size() ? leaf_by_taxon_[t] : kNoNode;
  }

  // Sorted taxon ids of all leaves.
  std::vector<TaxonId> leaf_taxa() const;

  // Children-before-parents order over all nodes.
  std::vector<NodeId> postorder() const;

  // ---- construction (parser and generators) ----
  NodeId new_leaf(TaxonId taxon);
  NodeId new_internal();
  void add_child(NodeId parent, NodeId child);
  void set_root(NodeId v) { root_ = v; }

  // Rebuilds sizes, depths and the taxon -> leaf index in one pass.
  void build_indices();

  // ---- restructuring ----
  // Moves `members` (currently children of `parent`) under a fresh node that
  // becomes a child of `parent`. Sibling order of `parent` is unspecified
  // afterwards; cost is proportional to |members|. Returns the new node.
  NodeId group_children(NodeId parent, std::span<const NodeId> members);

  // Forces the depth cache up to date (useful before sharing a tree
  // read-only across threads).
  void ensure_depth_cache() const;

 private:
  void detach_child(NodeId parent, NodeId child);

  std::vector<Node> nodes_;
  NodeId root_ = kNoNode;
  std::uint32_t leaf_count_ = 0;
  std::vector<NodeId> leaf_by_taxon_;
  std::shared_ptr<const TaxonTable> taxa_;

  mutable std::vector<std::uint32_t> depth_;
  mutable bool depths_current_ = false;
};

// Structural validation used by tests and debugging: a single root, parent
// and child links that agree, no unary internal nodes, size and depth caches
// that match a recomputation from scratch, and a taxon index that is a
// bijection onto the leaves. Throws Error describing the first violation.
void validate_tree(const Tree& tree);

}  // namespace treegraft
