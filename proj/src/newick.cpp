#include "treegraft/newick.hpp"

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <span>
#include <vector>

#include "treegraft/errors.hpp"

namespace treegraft {

namespace {

bool label_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '.' || c == '-';
}

bool space_char(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

// Cursor over the input with the few token helpers the grammar needs.
class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && space_char(text_[pos_])) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() { ++pos_; }
  std::size_t pos() const { return pos_; }

  std::string_view read_label() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && label_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // Consumes ':' <number> if present; the value itself is discarded.
  void skip_branch_length() {
    skip_space();
    if (at_end() || peek() != ':') return;
    advance();
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (label_char(text_[pos_]) || text_[pos_] == '+' || text_[pos_] == '-'))
      ++pos_;
    std::string_view token = text_.substr(start, pos_ - start);
    double value = 0.0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size())
      throw MalformedInput("bad branch length at position " + std::to_string(start));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Tree parse_newick(std::string_view text, const std::shared_ptr<TaxonTable>& taxa) {
  Tree tree(taxa);
  Scanner in(text);

  in.skip_space();
  if (in.at_end()) throw EmptyTree("input contains no tree");
  if (in.peek() == ';') throw EmptyTree("tree before ';' is empty");

  // Open parenthesis groups; each collects finished child subtrees.
  std::vector<std::vector<NodeId>> groups;
  NodeId pending = kNoNode;  // last finished subtree
  bool expect_subtree = true;

  while (true) {
    in.skip_space();
    if (expect_subtree) {
      if (in.at_end()) throw MalformedInput("unexpected end of input");
      if (in.peek() == '(') {
        in.advance();
        groups.emplace_back();
        continue;
      }
      std::string_view label = in.read_label();
      if (label.empty())
        throw UnlabeledLeaf("expected a leaf label at position " + std::to_string(in.pos()));
      pending = tree.new_leaf(taxa->intern(label));
      in.skip_branch_length();
      expect_subtree = false;
      continue;
    }

    if (in.at_end()) throw MalformedInput("missing ';' at end of tree");
    char c = in.peek();
    if (c == ',') {
      if (groups.empty()) throw MalformedInput("',' outside parentheses");
      in.advance();
      groups.back().push_back(pending);
      pending = kNoNode;
      expect_subtree = true;
    } else if (c == ')') {
      if (groups.empty()) throw MalformedInput("unbalanced ')'");
      in.advance();
      groups.back().push_back(pending);
      std::vector<NodeId> members = std::move(groups.back());
      groups.pop_back();
      if (members.size() < 2)
        throw MalformedInput("internal node needs at least two children");
      NodeId internal = tree.new_internal();
      for (NodeId m : members) tree.add_child(internal, m);
      pending = internal;
      in.skip_space();
      in.read_label();  // internal-node label: accepted, discarded
      in.skip_branch_length();
    } else if (c == ';') {
      if (!groups.empty()) throw MalformedInput("unbalanced '('");
      in.advance();
      in.skip_space();
      if (!in.at_end()) throw MalformedInput("trailing content after ';'");
      break;
    } else {
      throw MalformedInput("unexpected character '" + std::string(1, c) + "' at position " +
                           std::to_string(in.pos()));
    }
  }

  tree.set_root(pending);
  tree.build_indices();
  return tree;
}

Tree parse_newick(std::string_view text) {
  return parse_newick(text, std::make_shared<TaxonTable>());
}

namespace {

// Child lists to use while writing; empty = stored order.
std::string write_tree(const Tree& tree, const std::vector<std::vector<NodeId>>& order) {
  std::string out;
  out.reserve(tree.node_count() * 4);

  auto kids = [&](NodeId v) -> std::span<const NodeId> {
    if (!order.empty() && !order[v].empty()) return order[v];
    return tree.children(v);
  };

  struct Frame {
    NodeId v;
    std::uint32_t next = 0;
  };
  std::vector<Frame> stack;

  if (tree.is_leaf(tree.root())) {
    out += tree.label(tree.root());
  } else {
    out += '(';
    stack.push_back({tree.root(), 0});
  }
  while (!stack.empty()) {
    Frame& f = stack.back();
    std::span<const NodeId> c = kids(f.v);
    if (f.next < c.size()) {
      if (f.next > 0) out += ',';
      NodeId child = c[f.next];
      ++f.next;
      if (tree.is_leaf(child)) {
        out += tree.label(child);
      } else {
        out += '(';
        stack.push_back({child, 0});  // invalidates f
      }
    } else {
      out += ')';
      stack.pop_back();
    }
  }
  out += ';';
  return out;
}

}  // namespace

std::string serialize_newick(const Tree& tree) {
  if (tree.empty()) throw EmptyTree("cannot serialize an empty tree");
  return write_tree(tree, {});
}

std::string serialize_newick_canonical(const Tree& tree) {
  if (tree.empty()) throw EmptyTree("cannot serialize an empty tree");

  // Smallest descendant label per node, then children sorted by it.
  std::vector<const std::string*> min_label(tree.node_count(), nullptr);
  std::vector<std::vector<NodeId>> order(tree.node_count());
  for (NodeId v : tree.postorder()) {
    if (tree.is_leaf(v)) {
      min_label[v] = &tree.label(v);
      continue;
    }
    std::span<const NodeId> c = tree.children(v);
    std::vector<NodeId> sorted(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end(),
              [&](NodeId a, NodeId b) { return *min_label[a] < *min_label[b]; });
    min_label[v] = min_label[sorted.front()];
    order[v] = std::move(sorted);
  }
  return write_tree(tree, order);
}

}  // namespace treegraft
