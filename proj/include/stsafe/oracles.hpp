#pragma once

#include "stsafe/graph.hpp"
#include "stsafe/safety.hpp"

namespace stsafe {

enum class CandidateKind { Paths, Trails, Walks, MultiTrails };

// Per-element visibility; the alphabet of projected sequences.
struct VisibilityMask {
  std::vector<bool> node, edge;

  static VisibilityMask none(const Graph& g);
  static VisibilityMask all_edges(const Graph& g);   // G-visible edge sequences
  static VisibilityMask all_nodes(const Graph& g);   // V-visible node sequences
  static VisibilityMask everything(const Graph& g);  // full alternating sequences
  static VisibilityMask from_set(const Graph& g, const VisibilitySet& x);
};

// Candidate set selector. Without an explicit visibility, Paths/Trails/Walks
// project to edge sequences and MultiTrails to node sequences.
struct CandidateModel {
  CandidateKind kind = CandidateKind::Paths;
  int walk_bound = 0;  // Walks only: maximum edge-length
  std::optional<VisibilityMask> visibility;
};

// Hard limits; exceeding one throws GuardError rather than truncating, so an
// oracle verdict never comes from an incomplete enumeration.
struct OracleGuards {
  int path_trail_max_edges = 24;
  int walk_max_edges = 12;
  int walk_max_bound = 40;
  std::uint64_t step_cap = 200'000'000;
  std::uint64_t candidate_cap = 2'000'000;

  // Relaxed limits for the test harness and STSAFE_ORACLE_LIMIT overrides.
  static OracleGuards unlimited();
};

// Exact candidate enumeration. Paths repeat no node (start==target cycles
// aside), trails repeat no edge id, walks are capped by edge-length.
std::vector<Walk> enumerate_candidates(const Graph& g, NodeId s, NodeId t,
                                       const CandidateModel& model,
                                       const OracleGuards& guards = {});

// Candidate count without materializing; walks are counted by a saturating
// layered sweep instead of enumeration.
std::uint64_t count_candidates(const Graph& g, NodeId s, NodeId t,
                               const CandidateModel& model,
                               const OracleGuards& guards = {});

// True iff `query` is a substring of the projected sequence of every
// candidate. Decided by searching for a single avoiding candidate: paths and
// trails by backtracking, walks by breadth-first search over the product of
// the graph with the query-matching automaton. A breaking walk can always be
// shortened to one s-t path plus one inserted cycle, each of at most n
// edges, so a walk bound of 2n is exhaustive.
bool oracle_safe(const Graph& g, NodeId s, NodeId t, const CandidateModel& model,
                 std::span<const Element> query, const OracleGuards& guards = {});

// Is there a u-v path through w? Brute force; the general problem is hard.
bool detour_decide(const Graph& g, NodeId u, NodeId v, NodeId w,
                   const OracleGuards& guards = {});

enum class RestrictMode { Edges, Nodes };

// Node-expanded gadget whose query is safe under X-visible stPaths (and
// stTrails, which coincide after full expansion) exactly when the detour
// instance is a no-instance.
struct DetourReduction {
  Graph graph;
  ExpansionMap expansion;
  NodeId source = -1, target = -1;
  VisibilitySet x;
  std::vector<Element> query;
};

DetourReduction build_detour_reduction(const Graph& g, NodeId u, NodeId v, NodeId w,
                                       RestrictMode mode);

// Reference sequences via per-element removal plus the order induced by one
// s-t path (every cut element lies on every path).
std::vector<EdgeId> oracle_bridge_sequence(const Graph& g, NodeId s, NodeId t);
std::vector<NodeId> oracle_articulation_sequence(const Graph& g, NodeId s, NodeId t);

struct OracleSolution {
  std::vector<SafeInterval> intervals;  // over the reference sequence
  std::vector<NodeId> singletons;
};

// Maximal safe substrings of the reference bridge sequence under the given
// candidate kind (Paths, Trails or Walks; bound 2n applied for walks), plus
// maximal safe empty walks.
OracleSolution oracle_max_safe_edges(const Graph& g, NodeId s, NodeId t,
                                     CandidateKind kind,
                                     const OracleGuards& guards = {});

// Maximal safe substrings of the visible subsequence of the bridge sequence
// of `g` (already expanded) under bounded walks with the given visibility.
// Returns the visible reference sequence through `sequence`.
OracleSolution oracle_max_safe_x_walks(const Graph& g, NodeId s, NodeId t,
                                       const VisibilityMask& mask,
                                       std::vector<EdgeId>* sequence,
                                       const OracleGuards& guards = {});

// Maximal safe node sequences for trails of the multigraph, as substrings of
// the articulation sequence, plus maximal safe single nodes.
struct OracleMTrails {
  std::vector<NodeId> sequence;  // articulation order
  std::vector<SafeInterval> intervals;
  std::vector<std::vector<NodeId>> node_sequences;
  std::vector<NodeId> singletons;
};

OracleMTrails oracle_max_safe_mtrails(const Graph& g, NodeId s, NodeId t,
                                      const OracleGuards& guards = {});

}  // namespace stsafe
