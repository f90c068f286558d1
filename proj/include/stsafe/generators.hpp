#pragma once

#include <cstdint>

#include "stsafe/graph.hpp"

namespace stsafe {

enum class FamilyKind {
  Chain,
  JunctionCycles,
  QuadraticBreakers,
  QuadraticSolution,
  RandomDigraph,
  RandomMultigraph,
};

// Generation is deterministic given (kind, k, seed).
struct FamilySpec {
  FamilyKind kind = FamilyKind::Chain;
  int k = 2;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  Graph graph;
  NodeId s = -1, t = -1;
};

// chain: k bridges in a path.
// junction-cycles: chain with a 2-cycle at every junction.
// quadratic-breakers: chain of k adjacent bridges, a loop at every junction
//   and a backward edge between every pair of interior components, so there
//   are k-i-1 breakers of bridge length i before domination.
// quadratic-solution (k even): chain with a staircase of k/2 overlapping
//   breakers whose k/2+1 maximal intervals each span at least k/2 bridges.
// random-digraph / random-multigraph: sparse random graphs over k nodes with
//   a planted s-t path; multigraph duplicates edges up to multiplicity 3.
GeneratedInstance generate(const FamilySpec& spec);

std::optional<FamilyKind> family_from_name(std::string_view name);
std::string_view family_name(FamilyKind kind);

}  // namespace stsafe
