#pragma once

#include "stsafe/decomposition.hpp"

namespace stsafe {

// 1-based inclusive index range into a bridge sequence.
struct SafeInterval {
  int lo = 0, hi = 0;

  friend bool operator==(const SafeInterval&, const SafeInterval&) = default;
};

// Maximal safe edge sequences (as bridge index ranges) plus the maximal safe
// empty walks. Intervals are sorted by lo, pairwise incomparable under
// containment; singletons follow articulation order.
struct Solution {
  std::vector<SafeInterval> intervals;
  std::vector<NodeId> singletons;
};

// Maximal runs of the bridge sequence in which each consecutive pair of
// bridges is adjacent.
Solution max_safe_paths(const Graph& g, const CutDecomposition& dec);

// As max_safe_paths, but a run also splits between a pair with a trail
// breaker: an in-edge of the junction whose tail lies in the junction's
// component.
Solution max_safe_trails(const Graph& g, const CutDecomposition& dec);

// Articulation points that are not an endpoint of any bridge covered by the
// intervals; those extend to a longer safe walk and are not maximal alone.
std::vector<NodeId> single_node_solutions(const Graph& g,
                                          const ArticulationDecomposition& art,
                                          std::span<const SafeInterval> intervals,
                                          const CutDecomposition& dec);

// Node sequences of the intervals (tail of first bridge, then heads), plus
// singleton nodes as 1-node sequences; duplicates removed.
std::vector<std::vector<NodeId>> project_to_nodes(const Graph& g,
                                                  const CutDecomposition& dec,
                                                  std::span<const SafeInterval> intervals,
                                                  std::span<const NodeId> singletons);

}  // namespace stsafe
