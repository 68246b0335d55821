#include "treegraft/clusters.hpp"

#include <algorithm>

#include "treegraft/errors.hpp"

namespace treegraft {

std::size_t ClusterHash::operator()(const Cluster& c) const noexcept {
  // FNV-1a over the id sequence.
  std::uint64_t h = 1469598103934665603ull;
  for (TaxonId id : c.members) {
    h ^= id;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::uint64_t ClusterSet::difference_count(const ClusterSet& other) const {
  std::uint64_t n = 0;
  for (const Cluster& c : set_)
    if (!other.contains(c)) ++n;
  return n;
}

Cluster leaf_set(const Tree& tree, NodeId u) {
  Cluster out;
  out.members.reserve(tree.size(u));
  std::vector<NodeId> stack{u};
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (tree.is_leaf(v)) {
      out.members.push_back(tree.taxon(v));
    } else {
      for (NodeId c : tree.children(v)) stack.push_back(c);
    }
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

ClusterSet clusters(const Tree& tree) {
  ClusterSet out;
  for (NodeId v = 0; v < tree.node_count(); ++v) {
    if (tree.is_leaf(v) || v == tree.root()) continue;
    out.insert(leaf_set(tree, v));
  }
  return out;
}

bool same_leaf_set(const Tree& a, const Tree& b) {
  return a.taxa() == b.taxa() && a.leaf_taxa() == b.leaf_taxa();
}

namespace {

void require_same_leaves(const Tree& a, const Tree& b) {
  if (!same_leaf_set(a, b))
    throw LeafSetMismatch("trees do not share one leaf set");
}

}  // namespace

std::uint64_t rf_distance(const Tree& a, const Tree& b) {
  require_same_leaves(a, b);
  return clusters(a).difference_count(clusters(b));
}

std::uint64_t rf_distance_symmetric(const Tree& a, const Tree& b) {
  require_same_leaves(a, b);
  ClusterSet ca = clusters(a);
  ClusterSet cb = clusters(b);
  return ca.difference_count(cb) + cb.difference_count(ca);
}

bool clusters_compatible(const Cluster& a, const Cluster& b) {
  // Count shared members with one merge pass over the sorted id lists;
  // disjoint or nested means the overlap is empty or one whole side.
  std::size_t i = 0, j = 0, shared = 0;
  while (i < a.members.size() && j < b.members.size()) {
    if (a.members[i] == b.members[j]) {
      ++shared;
      ++i;
      ++j;
    } else if (a.members[i] < b.members[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return shared == 0 || shared == a.members.size() || shared == b.members.size();
}

namespace {

// Walks every member's ancestor path, counting how many of `a`'s leaves sit
// under each visited node. Returns the per-node counts (zero elsewhere).
std::vector<std::uint32_t> count_members_per_node(const Tree& tree, const Cluster& a) {
  std::vector<std::uint32_t> count(tree.node_count(), 0);
  for (TaxonId t : a.members) {
    NodeId v = tree.leaf_of(t);
    if (v == kNoNode)
      throw UnknownTaxon("taxon id " + std::to_string(t) + " is not a leaf of this tree");
    for (; v != kNoNode; v = tree.parent(v)) ++count[v];
  }
  return count;
}

// Descends from the root while a single child still holds every member.
NodeId deepest_containing(const Tree& tree, const std::vector<std::uint32_t>& count,
                          std::uint32_t want) {
  NodeId v = tree.root();
  for (;;) {
    NodeId next = kNoNode;
    for (NodeId c : tree.children(v)) {
      if (count[c] == want) {
        next = c;
        break;
      }
    }
    if (next == kNoNode) return v;
    v = next;
  }
}

}  // namespace

NodeId lca(const Tree& tree, const Cluster& a) {
  if (a.members.empty()) throw Error("lca of an empty cluster");
  std::vector<std::uint32_t> count = count_members_per_node(tree, a);
  return deepest_containing(tree, count, static_cast<std::uint32_t>(a.members.size()));
}

bool compatible_oracle(const Cluster& a, const Tree& tree) {
  if (a.members.empty()) throw Error("compatibility of an empty cluster");
  std::vector<std::uint32_t> count = count_members_per_node(tree, a);
  NodeId z = deepest_containing(tree, count, static_cast<std::uint32_t>(a.members.size()));
  for (NodeId c : tree.children(z)) {
    if (count[c] != 0 && count[c] != tree.size(c)) return false;
  }
  return true;
}

}  // namespace treegraft
