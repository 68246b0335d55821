#include "treegraft/refine.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

#include "treegraft/clusters.hpp"
#include "treegraft/counters.hpp"
#include "treegraft/errors.hpp"

namespace treegraft {

const char* engine_name(EngineKind k) {
  switch (k) {
    case EngineKind::Oracle: return "oracle";
    case EngineKind::Basic: return "basic";
    case EngineKind::Fast: return "fast";
  }
  return "?";
}

std::optional<EngineKind> engine_from_name(std::string_view name) {
  if (name == "oracle") return EngineKind::Oracle;
  if (name == "basic") return EngineKind::Basic;
  if (name == "fast") return EngineKind::Fast;
  return std::nullopt;
}

namespace {

void require_refinable(const Tree& t, const Tree& source) {
  if (t.empty() || source.empty()) throw EmptyTree("refine needs two nonempty trees");
  if (!same_leaf_set(t, source))
    throw LeafSetMismatch("tree and source must share one leaf set");
}

// Internal non-root nodes of `source`, children before parents. These are
// exactly the nodes whose clusters are nontrivial.
std::vector<NodeId> nontrivial_nodes(const Tree& source) {
  std::vector<NodeId> out;
  for (NodeId v : source.postorder())
    if (!source.is_leaf(v) && v != source.root()) out.push_back(v);
  return out;
}

RefineResult finish(CounterState& state, RefinementReport rep, const Tree& t,
                    const Tree& source, const RefineOptions& options) {
  rep.leaf_updates = state.leaf_updates();
  rep.loop_iterations = state.loop_iterations();
  rep.apply_calls = state.apply_calls();
  rep.apply_nodes_touched = state.apply_nodes_touched();
  rep.apply_max_extra = state.apply_max_extra();
  if (rep.loop_iterations > 2 * rep.leaf_updates)
    throw Error("internal: counter work exceeded its amortized bound");

  RefineResult out{state.release_host(), rep};
  if (options.compute_rf) {
    out.report.rf_before = rf_distance_symmetric(t, source);
    out.report.rf_after = rf_distance_symmetric(out.tree, source);
    out.report.rf_computed = true;
  }
  return out;
}

}  // namespace

RefineResult refine_basic(const Tree& t, const Tree& source, const RefineOptions& options) {
  require_refinable(t, source);
  CounterState state(t);
  RefinementReport rep;
  rep.engine = EngineKind::Basic;

  for (NodeId u : nontrivial_nodes(source)) {
    state.clear_counters();
    NodeId z = state.update_counter_subtree(source, u);
    ++rep.attempted;
    std::uint32_t cluster_size = source.size(u);
    if (state.is_compatible(cluster_size, z)) {
      std::uint32_t before = state.host().node_count();
      state.apply_refinement(z, cluster_size);
      if (state.host().node_count() != before) ++rep.accepted;
    }
  }
  return finish(state, rep, t, source, options);
}

RefineResult refine_fast(const Tree& t, const Tree& source, const RefineOptions& options) {
  require_refinable(t, source);
  CounterState state(t);
  RefinementReport rep;
  rep.engine = EngineKind::Fast;

  if (source.is_leaf(source.root())) {
    state.update_counter_leaf(source.taxon(source.root()));
    return finish(state, rep, t, source, options);
  }

  // Children of every internal source node by ascending subtree size; the
  // last entry is the heaviest child, whose accumulated counters are kept.
  std::uint32_t nn = source.node_count();
  std::vector<std::uint32_t> offset(nn + 1, 0);
  for (NodeId v = 0; v < nn; ++v)
    offset[v + 1] = offset[v] + static_cast<std::uint32_t>(source.children(v).size());
  std::vector<NodeId> sorted(offset[nn]);
  for (NodeId v = 0; v < nn; ++v) {
    std::span<const NodeId> c = source.children(v);
    std::copy(c.begin(), c.end(), sorted.begin() + offset[v]);
    std::stable_sort(sorted.begin() + offset[v], sorted.begin() + offset[v + 1],
                     [&](NodeId a, NodeId b) { return source.size(a) < source.size(b); });
  }
  auto child_count = [&](NodeId v) { return offset[v + 1] - offset[v]; };

  // Depth-first over `source`. Visiting u: solve each lighter child with a
  // clear after it, solve the heaviest child last and keep its counters,
  // re-insert the lighter subtrees, then test u's cluster. Every leaf is
  // therefore re-inserted once per ancestor it hangs below via a non-heaviest
  // child — and such children are at most half their parent's size.
  struct Frame {
    NodeId u;
    std::uint32_t next = 0;
  };
  std::vector<Frame> stack;
  stack.push_back({source.root(), 0});
  while (!stack.empty()) {
    Frame& f = stack.back();
    NodeId u = f.u;
    std::uint32_t k = child_count(u);
    if (f.next < k) {
      if (f.next > 0) state.clear_counters();
      NodeId child = sorted[offset[u] + f.next];
      ++f.next;
      if (source.is_leaf(child)) {
        state.update_counter_leaf(source.taxon(child));
      } else {
        stack.push_back({child, 0});  // invalidates f
      }
      continue;
    }

    NodeId z = kNoNode;
    for (std::uint32_t i = 0; i + 1 < k; ++i) {
      NodeId c = sorted[offset[u] + i];
      assert(2 * source.size(c) <= source.size(u));
      z = state.update_counter_subtree(source, c);
    }
    if (u != source.root()) {
      ++rep.attempted;
      std::uint32_t cluster_size = source.size(u);
      if (state.is_compatible(cluster_size, z)) {
        std::uint32_t before = state.host().node_count();
        state.apply_refinement(z, cluster_size);
        if (state.host().node_count() != before) ++rep.accepted;
      }
    }
    stack.pop_back();
  }

  // Per-leaf re-insertion counts, derived from which child carried each
  // node: a leaf is re-inserted once per non-heaviest ancestor edge.
  {
    std::vector<std::uint32_t> light(nn, 0);
    std::vector<NodeId> walk{source.root()};
    std::uint32_t max_charges = 0;
    while (!walk.empty()) {
      NodeId v = walk.back();
      walk.pop_back();
      NodeId heavy = sorted[offset[v + 1] - 1];
      for (NodeId c : source.children(v)) {
        light[c] = light[v] + (c == heavy ? 0 : 1);
        if (source.is_leaf(c)) {
          max_charges = std::max(max_charges, light[c]);
        } else {
          walk.push_back(c);
        }
      }
    }
    rep.max_leaf_subtree_adds = max_charges;
    assert(max_charges <= static_cast<std::uint32_t>(std::bit_width(source.leaf_count()) - 1));
  }
  return finish(state, rep, t, source, options);
}

RefineResult refine_oracle(const Tree& t, const Tree& source, const RefineOptions& options) {
  require_refinable(t, source);
  Tree host = t;
  RefinementReport rep;
  rep.engine = EngineKind::Oracle;

  std::vector<char> member(host.taxa()->size(), 0);
  std::vector<NodeId> stack;
  for (NodeId u : nontrivial_nodes(source)) {
    Cluster a = leaf_set(source, u);
    ++rep.attempted;
    if (!compatible_oracle(a, host)) continue;

    // Splice the cluster in below its lowest common ancestor: regroup the
    // children whose subtrees carry its members.
    for (TaxonId m : a.members) member[m] = 1;
    NodeId z = lca(host, a);
    std::vector<NodeId> carriers;
    for (NodeId c : host.children(z)) {
      stack.assign(1, c);
      bool carries = false;
      while (!stack.empty() && !carries) {
        NodeId v = stack.back();
        stack.pop_back();
        if (host.is_leaf(v)) {
          carries = member[host.taxon(v)] != 0;
        } else {
          for (NodeId w : host.children(v)) stack.push_back(w);
        }
      }
      if (carries) carriers.push_back(c);
    }
    for (TaxonId m : a.members) member[m] = 0;

    // Already represented by an existing node — nothing to insert.
    if (carriers.size() == host.children(z).size()) continue;
    if (carriers.size() == 1) continue;
    host.group_children(z, carriers);
    ++rep.accepted;
  }

  RefineResult out{std::move(host), rep};
  out.tree.ensure_depth_cache();
  if (options.compute_rf) {
    out.report.rf_before = rf_distance_symmetric(t, source);
    out.report.rf_after = rf_distance_symmetric(out.tree, source);
    out.report.rf_computed = true;
  }
  return out;
}

RefineResult refine(const Tree& t, const Tree& source, EngineKind engine,
                    const RefineOptions& options) {
  switch (engine) {
    case EngineKind::Oracle: return refine_oracle(t, source, options);
    case EngineKind::Basic: return refine_basic(t, source, options);
    case EngineKind::Fast: return refine_fast(t, source, options);
  }
  throw Error("unknown engine");
}

}  // namespace treegraft
