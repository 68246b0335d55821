#include "treegraft/generate.hpp"

#include <random>
#include <string>
#include <vector>

#include "treegraft/errors.hpp"

namespace treegraft {

const char* shape_name(Shape s) {
  switch (s) {
    case Shape::Yule: return "yule";
    case Shape::Uniform: return "uniform";
    case Shape::Caterpillar: return "caterpillar";
    case Shape::Balanced: return "balanced";
  }
  return "?";
}

std::optional<Shape> shape_from_name(std::string_view name) {
  if (name == "yule") return Shape::Yule;
  if (name == "uniform") return Shape::Uniform;
  if (name == "caterpillar") return Shape::Caterpillar;
  if (name == "balanced") return Shape::Balanced;
  return std::nullopt;
}

namespace {

// Scratch topology while shaping; leaves have no kids.
struct TmpNode {
  std::vector<std::uint32_t> kids;
  std::uint32_t parent = 0xffffffffu;
};

struct TmpTree {
  std::vector<TmpNode> nodes;
  std::uint32_t root = 0;

  std::uint32_t add() {
    nodes.emplace_back();
    return static_cast<std::uint32_t>(nodes.size() - 1);
  }
  void link(std::uint32_t parent, std::uint32_t child) {
    nodes[parent].kids.push_back(child);
    nodes[child].parent = parent;
  }
};

TmpTree shape_yule(std::uint32_t n, std::mt19937_64& rng) {
  TmpTree t;
  if (n == 1) {
    t.root = t.add();
    return t;
  }
  t.root = t.add();
  std::vector<std::uint32_t> leaves;
  for (int i = 0; i < 2; ++i) {
    std::uint32_t leaf = t.add();
    t.link(t.root, leaf);
    leaves.push_back(leaf);
  }
  while (leaves.size() < n) {
    std::uniform_int_distribution<std::size_t> pick(0, leaves.size() - 1);
    std::size_t idx = pick(rng);
    std::uint32_t v = leaves[idx];
    std::uint32_t a = t.add();
    std::uint32_t b = t.add();
    t.link(v, a);
    t.link(v, b);
    leaves[idx] = a;
    leaves.push_back(b);
  }
  return t;
}

TmpTree shape_uniform(std::uint32_t n, std::mt19937_64& rng) {
  TmpTree t;
  t.root = t.add();
  if (n == 1) return t;
  for (int i = 0; i < 2; ++i) t.link(t.root, t.add());
  for (std::uint32_t added = 2; added < n; ++added) {
    // Split the edge above a uniformly chosen node (the root included, which
    // grows a new root above the old one).
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(t.nodes.size() - 1));
    std::uint32_t v = pick(rng);
    std::uint32_t mid = t.add();
    std::uint32_t leaf = t.add();
    if (v == t.root) {
      t.link(mid, v);
      t.link(mid, leaf);
      t.root = mid;
    } else {
      std::uint32_t p = t.nodes[v].parent;
      for (std::uint32_t& k : t.nodes[p].kids)
        if (k == v) k = mid;
      t.nodes[mid].parent = p;
      t.link(mid, v);
      t.link(mid, leaf);
    }
  }
  return t;
}

TmpTree shape_caterpillar(std::uint32_t n) {
  TmpTree t;
  if (n == 1) {
    t.root = t.add();
    return t;
  }
  std::uint32_t spine = t.add();
  t.link(spine, t.add());
  t.link(spine, t.add());
  for (std::uint32_t added = 2; added < n; ++added) {
    std::uint32_t up = t.add();
    t.link(up, spine);
    t.link(up, t.add());
    spine = up;
  }
  t.root = spine;
  return t;
}

std::uint32_t balanced_subtree(TmpTree& t, std::uint32_t n) {
  std::uint32_t v = t.add();
  if (n == 1) return v;
  std::uint32_t left = balanced_subtree(t, (n + 1) / 2);
  std::uint32_t right = balanced_subtree(t, n / 2);
  t.link(v, left);
  t.link(v, right);
  return v;
}

TmpTree shape_balanced(std::uint32_t n) {
  TmpTree t;
  t.root = balanced_subtree(t, n);  // depth log2(n), safe to recurse
  return t;
}

}  // namespace

Tree generate_tree(const GenSpec& spec, std::shared_ptr<TaxonTable> taxa) {
  if (spec.leaves == 0) throw Error("generate: leaf count must be at least 1");
  if (spec.contraction_prob < 0.0 || spec.contraction_prob > 1.0)
    throw Error("generate: contraction probability must lie in [0, 1]");
  if (!taxa) taxa = std::make_shared<TaxonTable>();

  std::mt19937_64 rng(spec.seed);
  TmpTree tmp;
  switch (spec.shape) {
    case Shape::Yule: tmp = shape_yule(spec.leaves, rng); break;
    case Shape::Uniform: tmp = shape_uniform(spec.leaves, rng); break;
    case Shape::Caterpillar: tmp = shape_caterpillar(spec.leaves); break;
    case Shape::Balanced: tmp = shape_balanced(spec.leaves); break;
  }

  // Collapse internal non-root edges, drawn in creation order so the result
  // only depends on the seed.
  std::vector<char> collapsed(tmp.nodes.size(), 0);
  if (spec.contraction_prob > 0.0) {
    std::bernoulli_distribution flip(spec.contraction_prob);
    for (std::uint32_t v = 0; v < tmp.nodes.size(); ++v) {
      if (v == tmp.root || tmp.nodes[v].kids.empty()) continue;
      if (flip(rng)) collapsed[v] = 1;
    }
  }

  // Children with collapsed nodes spliced out, order preserved.
  std::vector<std::uint32_t> scratch;
  auto effective_kids = [&](std::uint32_t v) {
    std::vector<std::uint32_t> out;
    scratch.assign(tmp.nodes[v].kids.rbegin(), tmp.nodes[v].kids.rend());
    while (!scratch.empty()) {
      std::uint32_t w = scratch.back();
      scratch.pop_back();
      if (collapsed[w]) {
        scratch.insert(scratch.end(), tmp.nodes[w].kids.rbegin(), tmp.nodes[w].kids.rend());
      } else {
        out.push_back(w);
      }
    }
    return out;
  };

  // Materialize, labeling leaves t1..tN in preorder.
  Tree tree(taxa);
  std::uint32_t next_label = 1;
  auto make_node = [&](std::uint32_t v) {
    if (tmp.nodes[v].kids.empty())
      return tree.new_leaf(taxa->intern("t" + std::to_string(next_label++)));
    return tree.new_internal();
  };

  struct Item {
    std::uint32_t tmp_node;
    NodeId final_parent;
  };
  std::vector<Item> stack;
  stack.push_back({tmp.root, kNoNode});
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    NodeId f = make_node(it.tmp_node);
    if (it.final_parent == kNoNode)
      tree.set_root(f);
    else
      tree.add_child(it.final_parent, f);
    std::vector<std::uint32_t> kids = effective_kids(it.tmp_node);
    // Push right to left so the leftmost subtree is materialized first.
    for (auto rit = kids.rbegin(); rit != kids.rend(); ++rit) stack.push_back({*rit, f});
  }
  tree.build_indices();
  return tree;
}

Tree make_star(std::uint32_t leaves, std::shared_ptr<TaxonTable> taxa) {
  GenSpec spec;
  spec.leaves = leaves;
  spec.shape = Shape::Caterpillar;
  spec.contraction_prob = 1.0;
  return generate_tree(spec, std::move(taxa));
}

}  // namespace treegraft
