#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "treegraft/tree.hpp"

namespace treegraft {

enum class Shape {
  Yule,         // repeatedly split a uniformly chosen leaf
  Uniform,      // attach each new leaf to a uniformly chosen node's edge
  Caterpillar,  // one long spine: (((t1,t2),t3),t4)...
  Balanced,     // halve the leaf count at every level
};

const char* shape_name(Shape s);
std::optional<Shape> shape_from_name(std::string_view name);

struct GenSpec {
  std::uint32_t leaves = 1;
  std::uint64_t seed = 0;
  Shape shape = Shape::Yule;
  // Probability of collapsing each internal non-root edge after the binary
  // shape is built; 0 keeps the tree binary, 1 yields a star.
  double contraction_prob = 0.0;
};

// Builds a random tree with leaves labeled t1..tN (preorder), interned into
// `taxa` (a fresh table when none is given). Output is a pure function of
// the spec. Throws Error for zero leaves or a contraction probability
// outside [0, 1].
Tree generate_tree(const GenSpec& spec, std::shared_ptr<TaxonTable> taxa = nullptr);

// Star over t1..tN: the least refined tree on these leaves.
Tree make_star(std::uint32_t leaves, std::shared_ptr<TaxonTable> taxa = nullptr);

}  // namespace treegraft
