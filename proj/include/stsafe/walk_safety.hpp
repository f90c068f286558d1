#pragma once

#include <functional>

#include "stsafe/safety.hpp"

namespace stsafe {

// A dominance record over the bridge sequence. A breaker (start, end) proves
// an interval [p, q] unsafe exactly when p < start and q > end.
// Zero-length breakers have end + 1 == start (a trail breaker between the
// adjacent pair); non-zero ones satisfy 2 <= start <= end <= |B|-1 and carry
// the backward edge that witnesses them.
struct Breaker {
  int start = 0;
  int end = 0;
  std::optional<EdgeId> witness;

  bool zero_length() const { return end + 1 == start; }

  friend bool operator==(const Breaker& a, const Breaker& b) {
    return a.start == b.start && a.end == b.end;
  }
};

// Starts strictly increasing, ends strictly increasing: an antichain under
// range containment.
using BreakerStaircase = std::vector<Breaker>;

// Bridge index ranges of the maximal safe walks plus the maximal safe empty
// walks; size O(|B|), expandable in time linear in the output.
struct CompactSolution {
  std::vector<SafeInterval> intervals;
  std::vector<NodeId> singletons;
};

// Accepts 1-based bridge indices. A non-zero breaker is kept only when every
// bridge index it spans is accepted; zero-length breakers always survive.
using BridgeFilter = std::function<bool(int)>;

// The dominance-pruned set of minimal walk breakers, in O(m+n).
BreakerStaircase minimal_walk_breakers(const Graph& g, const CutDecomposition& dec,
                                       const BridgeFilter& accept = {});

// k breakers yield k+1 intervals: [1, end_1], [start_1, end_2], ...,
// [start_k, |B|]; no breakers yield [1, |B|].
CompactSolution compact_max_safe_walks(const Graph& g, const CutDecomposition& dec,
                                       const BreakerStaircase& stairs);

// Emits each interval as an alternating node/edge walk and each singleton as
// an empty walk; time linear in the emitted length.
std::vector<Walk> expand_solution(const Graph& g, const CutDecomposition& dec,
                                  std::span<const SafeInterval> intervals,
                                  std::span<const NodeId> singletons);

// Subset visibility: visible nodes are expanded (their internal edges become
// visible), the decomposition is recomputed, and invisible bridges are
// dropped with their flanking components merged.
struct VisibilityRestriction {
  Graph expanded;
  ExpansionMap expansion;
  NodeId source = -1, target = -1;  // in the expanded graph
  std::vector<bool> visible_edge;   // per expanded edge
  CutDecomposition merged;          // the X-bridge sequence
};

VisibilityRestriction restrict_visibility(const Graph& g, NodeId s, NodeId t,
                                          const VisibilitySet& x);

// Maximal safe sequences of visible elements, as intervals over the merged
// bridge sequence. Visible bridges need not be adjacent; a pair splits only
// when a visible edge inside the merged component can restart the sequence.
CompactSolution x_max_safe_walks(const VisibilityRestriction& vr);

// Node safety for trails of a multigraph: walk breakers of the merged simple
// graph survive only when no bridge they span is a bridge of the multigraph
// (i.e. every spanned bridge has a parallel copy).
struct MultigraphTrailSolution {
  Graph merged;  // parallel edges merged
  MultiplicityMap multiplicity;
  CutDecomposition dec;  // over the merged graph
  std::vector<SafeInterval> intervals;
  std::vector<std::vector<NodeId>> node_sequences;
  std::vector<NodeId> singletons;
};

MultigraphTrailSolution multigraph_trail_solution(const Graph& g, NodeId s, NodeId t);

}  // namespace stsafe
