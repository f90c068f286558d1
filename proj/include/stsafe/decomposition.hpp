#pragma once

#include "stsafe/graph.hpp"

namespace stsafe {

// Ordered s-t bridge sequence B with per-node bridge components.
// component[v] is in 1..|B|+1 for nodes reachable from s; 0 marks the
// unreachable region. Component i is entered at entrances[i-1] and left at
// exits[i-1] (entrance of 1 is s, exit of |B|+1 is t).
struct CutDecomposition {
  NodeId source = -1, target = -1;
  std::vector<EdgeId> bridges;  // visit order
  std::vector<int> component;   // per node
  std::vector<NodeId> entrances, exits;

  int component_count() const { return static_cast<int>(bridges.size()) + 1; }
  NodeId entrance(int i) const { return entrances[i - 1]; }
  NodeId exit(int i) const { return exits[i - 1]; }
};

// All s-t bridges with their components in O(m+n). Throws UnreachableError
// when t cannot be reached from s.
CutDecomposition bridge_decomposition(const Graph& g, NodeId s, NodeId t);

// Ordered s-t articulation points (s first, t last) with components mapped
// back from the fully node-expanded graph.
struct ArticulationDecomposition {
  NodeId source = -1, target = -1;
  std::vector<NodeId> points;  // visit order
  std::vector<int> component;  // per node; 0 = unreachable from s
};

ArticulationDecomposition articulation_decomposition(const Graph& g, NodeId s, NodeId t);

// Drops the bridges whose keep flag is false and merges their flanking
// components; indices are reassigned 1..kept+1.
CutDecomposition drop_bridges(const Graph& g, const CutDecomposition& dec,
                              const std::vector<bool>& keep);

}  // namespace stsafe
