#pragma once

#include <stdexcept>

namespace treegraft {

// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newick text that does not match the accepted grammar.
struct MalformedInput : Error {
  using Error::Error;
};

// Input that contains no tree at all.
struct EmptyTree : Error {
  using Error::Error;
};

// The same leaf label appears twice in one tree.
struct DuplicateLeafLabel : Error {
  using Error::Error;
};

// A leaf position without a label.
struct UnlabeledLeaf : Error {
  using Error::Error;
};

// Two trees that were expected to share a leaf set do not.
struct LeafSetMismatch : Error {
  using Error::Error;
};

// A taxon id or label that the tree does not contain.
struct UnknownTaxon : Error {
  using Error::Error;
};

// A leaf inserted twice into the same counter accumulation.
struct LeafAlreadyAdded : Error {
  using Error::Error;
};

// Internal invariant violation: the children that propagated into a node do
// not account for the cluster being inserted.
struct InconsistentPropagation : Error {
  using Error::Error;
};

}  // namespace treegraft
