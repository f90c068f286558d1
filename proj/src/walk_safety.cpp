#include "stsafe/walk_safety.hpp"

#include <algorithm>

namespace stsafe {

namespace {

// Marks, per component in [first_comp, last_comp], the nodes reverse
// reachable from the component's exit without leaving the component. One
// global pass: every node and in-edge is touched at most once.
std::vector<bool> mark_reverse_reachable(const Graph& g, const CutDecomposition& dec,
                                         int first_comp, int last_comp) {
  std::vector<bool> marked(g.node_count(), false);
  std::vector<NodeId> stack;
  for (int c = first_comp; c <= last_comp; ++c) {
    NodeId exit = dec.exit(c);
    marked[exit] = true;
    stack.push_back(exit);
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (EdgeId e : g.in_edges(u)) {
        NodeId v = g.tail(e);
        if (!marked[v] && dec.component[v] == c) {
          marked[v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return marked;
}

// Stage one and stage two over precomputed zero-length splits and a per-start
// cap on admissible ends. zero_break[i] refers to the pair (b_{i-1}, b_i).
BreakerStaircase staircase_core(const Graph& g, const CutDecomposition& dec,
                                const std::vector<bool>& zero_break,
                                const std::vector<int>& max_end) {
  const int b = static_cast<int>(dec.bridges.size());
  // end[i] = |B| signifies that no breaker starts at i.
  std::vector<int> end(b + 1, b);
  std::vector<EdgeId> witness(b + 1, -1);
  for (int i = 2; i <= b; ++i)
    if (zero_break[i]) end[i] = i - 1;

  if (b >= 3) {
    std::vector<bool> marked = mark_reverse_reachable(g, dec, 2, b - 1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      int cu = dec.component[g.tail(e)];
      int cv = dec.component[g.head(e)];
      // backward edge from C_{j+1} to C_i with 2 <= i <= j <= |B|-1
      if (cv < 2 || cu <= cv || cu > b) continue;
      if (!marked[g.head(e)]) continue;
      int i = cv, j = cu - 1;
      if (j > max_end[i]) continue;
      if (j < end[i]) {
        end[i] = j;
        witness[i] = e;
      }
    }
  }

  BreakerStaircase stairs;
  int min_end = b;
  for (int i = b; i >= 2; --i) {
    if (end[i] < min_end) {
      Breaker br{i, end[i], std::nullopt};
      if (witness[i] >= 0 && end[i] >= i) br.witness = witness[i];
      stairs.push_back(br);
      min_end = end[i];
    }
  }
  std::reverse(stairs.begin(), stairs.end());
  return stairs;
}

// k breakers cut the sequence into k+1 overlapping maximal intervals.
std::vector<SafeInterval> intervals_from_staircase(const BreakerStaircase& stairs, int b) {
  std::vector<SafeInterval> intervals;
  if (b == 0) return intervals;
  int lo = 1;
  for (const Breaker& br : stairs) {
    intervals.push_back({lo, br.end});
    lo = br.start;
  }
  intervals.push_back({lo, b});
  intervals.erase(std::unique(intervals.begin(), intervals.end()), intervals.end());
  return intervals;
}

std::vector<bool> plain_zero_breaks(const Graph& g, const CutDecomposition& dec) {
  const int b = static_cast<int>(dec.bridges.size());
  std::vector<bool> zero(b + 1, false);
  for (int i = 2; i <= b; ++i) {
    NodeId junction = g.tail(dec.bridges[i - 1]);
    if (g.head(dec.bridges[i - 2]) != junction) {
      zero[i] = true;  // non-adjacent pair: the connecting path is a breaker
      continue;
    }
    for (EdgeId e : g.in_edges(junction)) {
      if (dec.component[g.tail(e)] == i) {
        zero[i] = true;
        break;
      }
    }
  }
  return zero;
}

}  // namespace

BreakerStaircase minimal_walk_breakers(const Graph& g, const CutDecomposition& dec,
                                       const BridgeFilter& accept) {
  const int b = static_cast<int>(dec.bridges.size());
  std::vector<int> max_end(b + 1, b);
  if (accept) {
    // max_end[i]: longest run i..j of accepted bridges (i-1 when i rejected)
    std::vector<bool> ok(b + 1, false);
    for (int i = 1; i <= b; ++i) ok[i] = accept(i);
    for (int i = b; i >= 1; --i)
      max_end[i] = ok[i] ? (i < b ? std::max(i, max_end[i + 1]) : b) : i - 1;
  }
  return staircase_core(g, dec, plain_zero_breaks(g, dec), max_end);
}

CompactSolution compact_max_safe_walks(const Graph& g, const CutDecomposition& dec,
                                       const BreakerStaircase& stairs) {
  CompactSolution sol;
  sol.intervals = intervals_from_staircase(stairs, static_cast<int>(dec.bridges.size()));
  ArticulationDecomposition art = articulation_decomposition(g, dec.source, dec.target);
  sol.singletons = single_node_solutions(g, art, sol.intervals, dec);
  return sol;
}

std::vector<Walk> expand_solution(const Graph& g, const CutDecomposition& dec,
                                  std::span<const SafeInterval> intervals,
                                  std::span<const NodeId> singletons) {
  std::vector<Walk> walks;
  walks.reserve(intervals.size() + singletons.size());
  for (const SafeInterval& iv : intervals) {
    Walk w;
    w.nodes.reserve(iv.hi - iv.lo + 2);
    w.edges.reserve(iv.hi - iv.lo + 1);
    w.nodes.push_back(g.tail(dec.bridges[iv.lo - 1]));
    for (int i = iv.lo; i <= iv.hi; ++i) {
      w.edges.push_back(dec.bridges[i - 1]);
      w.nodes.push_back(g.head(dec.bridges[i - 1]));
    }
    walks.push_back(std::move(w));
  }
  for (NodeId v : singletons) walks.push_back(Walk{{v}, {}});
  return walks;
}

VisibilityRestriction restrict_visibility(const Graph& g, NodeId s, NodeId t,
                                          const VisibilitySet& x) {
  for (NodeId v : x.nodes)
    if (v < 0 || v >= g.node_count()) throw Error("visibility names an unknown node");
  for (EdgeId e : x.edges)
    if (e < 0 || e >= g.edge_count()) throw Error("visibility names an unknown edge");

  VisibilityRestriction vr;
  auto [expanded, map] = node_expansion(g, x.nodes);
  vr.expanded = std::move(expanded);
  vr.expansion = std::move(map);
  // Walks of g map to walks of the expanded graph that start at s and, when
  // t is expanded, end at t' so the final visit of t still traverses e_t.
  vr.source = s;
  vr.target = vr.expansion.expanded(t) ? vr.expansion.prime[t] : t;

  vr.visible_edge.assign(vr.expanded.edge_count(), false);
  for (EdgeId e : x.edges) vr.visible_edge[e] = true;  // original ids preserved
  for (NodeId v : x.nodes) vr.visible_edge[vr.expansion.internal_edge[v]] = true;

  CutDecomposition full = bridge_decomposition(vr.expanded, vr.source, vr.target);
  std::vector<bool> keep(full.bridges.size());
  for (size_t i = 0; i < full.bridges.size(); ++i) keep[i] = vr.visible_edge[full.bridges[i]];
  vr.merged = drop_bridges(vr.expanded, full, keep);
  return vr;
}

CompactSolution x_max_safe_walks(const VisibilityRestriction& vr) {
  const Graph& g = vr.expanded;
  const CutDecomposition& dec = vr.merged;
  const int b = static_cast<int>(dec.bridges.size());

  // Zero-length X-breakers: a visible non-bridge edge inside the merged
  // component whose head can still reach the component's exit. Non-adjacency
  // alone does not split, the in-between path has no visible edge.
  std::vector<bool> zero(b + 1, false);
  if (b >= 2) {
    std::vector<bool> marked = mark_reverse_reachable(g, dec, 2, b);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (!vr.visible_edge[e]) continue;
      int c = dec.component[g.tail(e)];
      if (c < 2 || c > b) continue;
      if (dec.component[g.head(e)] != c) continue;
      if (marked[g.head(e)]) zero[c] = true;
    }
  }

  std::vector<int> max_end(b + 1, b);
  BreakerStaircase stairs = staircase_core(g, dec, zero, max_end);

  CompactSolution sol;
  sol.intervals = intervals_from_staircase(stairs, b);
  return sol;
}

MultigraphTrailSolution multigraph_trail_solution(const Graph& g, NodeId s, NodeId t) {
  MultigraphTrailSolution out;
  auto [merged, mult] = merge_parallel_edges(g);
  out.merged = std::move(merged);
  out.multiplicity = std::move(mult);
  out.dec = bridge_decomposition(out.merged, s, t);

  // A non-zero breaker survives only when every bridge it spans has a
  // parallel copy; zero-length breakers span none and always survive.
  const MultiplicityMap& mm = out.multiplicity;
  const CutDecomposition& dec = out.dec;
  BreakerStaircase stairs = minimal_walk_breakers(
      out.merged, dec, [&](int i) { return mm.count[dec.bridges[i - 1]] >= 2; });
  out.intervals = intervals_from_staircase(stairs, static_cast<int>(dec.bridges.size()));

  ArticulationDecomposition art = articulation_decomposition(g, s, t);
  out.singletons = single_node_solutions(out.merged, art, out.intervals, dec);
  out.node_sequences = project_to_nodes(out.merged, dec, out.intervals, {});
  return out;
}

}  // namespace stsafe
