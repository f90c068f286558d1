#include "stsafe/safety.hpp"

#include <algorithm>

namespace stsafe {

namespace {

bool adjacent_pair(const Graph& g, const CutDecomposition& dec, int i) {
  return g.head(dec.bridges[i - 1]) == g.tail(dec.bridges[i]);
}

// Trail breaker between the 1-based pair (b_i, b_{i+1}): some in-edge of the
// junction comes from inside component i+1, the component whose exit is the
// junction. Self-loops at the junction count.
bool trail_breaker_between(const Graph& g, const CutDecomposition& dec, int i) {
  NodeId junction = g.tail(dec.bridges[i]);  // 0-based i is bridge i+1
  int comp = i + 1;
  for (EdgeId e : g.in_edges(junction)) {
    if (dec.component[g.tail(e)] == comp) return true;
  }
  return false;
}

template <typename SplitAt>
Solution runs_solution(const Graph& g, const CutDecomposition& dec, SplitAt split_at) {
  Solution sol;
  const int b = static_cast<int>(dec.bridges.size());
  if (b > 0) {
    int lo = 1;
    for (int i = 1; i < b; ++i) {
      if (split_at(i)) {
        sol.intervals.push_back({lo, i});
        lo = i + 1;
      }
    }
    sol.intervals.push_back({lo, b});
  }
  ArticulationDecomposition art = articulation_decomposition(g, dec.source, dec.target);
  sol.singletons = single_node_solutions(g, art, sol.intervals, dec);
  return sol;
}

}  // namespace

Solution max_safe_paths(const Graph& g, const CutDecomposition& dec) {
  return runs_solution(g, dec, [&](int i) { return !adjacent_pair(g, dec, i); });
}

Solution max_safe_trails(const Graph& g, const CutDecomposition& dec) {
  return runs_solution(g, dec, [&](int i) {
    return !adjacent_pair(g, dec, i) || trail_breaker_between(g, dec, i);
  });
}

std::vector<NodeId> single_node_solutions(const Graph& g,
                                          const ArticulationDecomposition& art,
                                          std::span<const SafeInterval> intervals,
                                          const CutDecomposition& dec) {
  std::vector<bool> touched(g.node_count(), false);
  for (const SafeInterval& iv : intervals) {
    for (int i = iv.lo; i <= iv.hi; ++i) {
      EdgeId e = dec.bridges[i - 1];
      touched[g.tail(e)] = true;
      touched[g.head(e)] = true;
    }
  }
  std::vector<NodeId> out;
  for (NodeId v : art.points)
    if (!touched[v]) out.push_back(v);
  return out;
}

std::vector<std::vector<NodeId>> project_to_nodes(const Graph& g,
                                                  const CutDecomposition& dec,
                                                  std::span<const SafeInterval> intervals,
                                                  std::span<const NodeId> singletons) {
  std::vector<std::vector<NodeId>> out;
  for (const SafeInterval& iv : intervals) {
    std::vector<NodeId> seq;
    seq.push_back(g.tail(dec.bridges[iv.lo - 1]));
    for (int i = iv.lo; i <= iv.hi; ++i) seq.push_back(g.head(dec.bridges[i - 1]));
    if (std::find(out.begin(), out.end(), seq) == out.end()) out.push_back(std::move(seq));
  }
  for (NodeId v : singletons) {
    std::vector<NodeId> seq{v};
    if (std::find(out.begin(), out.end(), seq) == out.end()) out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace stsafe
