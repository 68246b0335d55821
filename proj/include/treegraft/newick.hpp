#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "treegraft/tree.hpp"

namespace treegraft {

// Parses one rooted Newick tree, e.g. "((a,b),c);". Accepted grammar:
//   tree    := subtree ';'
//   subtree := label [':' number]
//            | '(' subtree (',' subtree)+ ')' [label] [':' number]
// Labels are runs of [A-Za-z0-9_.-]; whitespace between tokens is skipped.
// Branch lengths and internal-node labels are accepted and discarded — only
// the topology is kept. Leaf labels are interned into `taxa`.
//
// Throws MalformedInput, EmptyTree, DuplicateLeafLabel or UnlabeledLeaf.
Tree parse_newick(std::string_view text, const std::shared_ptr<TaxonTable>& taxa);

// Convenience overload that builds a fresh table for the tree.
Tree parse_newick(std::string_view text);

// Serializes using the stored child order, so restructuring effects stay
// visible in the output. A single-leaf tree serializes to "a;".
std::string serialize_newick(const Tree& tree);

// Deterministic form: children ordered by their smallest descendant label
// (lexicographic). Two trees have equal canonical strings exactly when they
// have the same topology over the same labels.
std::string serialize_newick_canonical(const Tree& tree);

}  // namespace treegraft
