#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stsafe {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input text could not be parsed; line numbers are 1-based.
struct ParseError : Error {
  ParseError(int line_no, const std::string& message)
      : Error("line " + std::to_string(line_no) + ": " + message), line(line_no) {}
  int line;
};

// An s-t query is rejected outright when t cannot be reached from s.
struct UnreachableError : Error {
  using Error::Error;
};

// An oracle size guard was exceeded. Guards are hard errors so an oracle
// verdict never comes from a truncated enumeration.
struct GuardError : Error {
  using Error::Error;
};

enum class Direction { Forward, Backward };

// Directed multigraph. Node names are interned to dense ids in first-seen
// order; parallel edges are distinct edge ids with identical endpoints; loops
// are allowed. Immutable once built; safe to share across concurrent readers.
class Graph {
 public:
  void reserve(int nodes, int edges);
  NodeId intern_node(std::string_view name);
  EdgeId add_edge(NodeId tail, NodeId head);

  int node_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  NodeId tail(EdgeId e) const { return edges_[e].tail; }
  NodeId head(EdgeId e) const { return edges_[e].head; }

  std::span<const EdgeId> out_edges(NodeId v) const { return out_[v]; }
  std::span<const EdgeId> in_edges(NodeId v) const { return in_[v]; }

  const std::string& name(NodeId v) const { return names_[v]; }
  std::optional<NodeId> find_node(std::string_view name) const;
  NodeId require_node(std::string_view name) const;

 private:
  struct EdgeRec {
    NodeId tail, head;
  };
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeId> ids_;
  std::vector<EdgeRec> edges_;
  std::vector<std::vector<EdgeId>> out_, in_;
};

// A node or an edge; the unit of visibility-filtered sequences.
struct Element {
  enum class Kind : std::uint8_t { Node, Edge };
  Kind kind = Kind::Node;
  std::int32_t id = -1;

  friend bool operator==(const Element&, const Element&) = default;
};

inline Element node_element(NodeId v) { return {Element::Kind::Node, v}; }
inline Element edge_element(EdgeId e) { return {Element::Kind::Edge, e}; }

// Alternating node/edge sequence: nodes.size() == edges.size() + 1, and each
// edge runs between its flanking nodes. A walk with no edges is an empty walk
// (a single node).
struct Walk {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;

  bool empty_walk() const { return edges.empty(); }
  int length() const { return static_cast<int>(edges.size()); }

  const std::vector<NodeId>& node_sequence() const { return nodes; }
  const std::vector<EdgeId>& edge_sequence() const { return edges; }

  // Subsequence of visible nodes and edges, in walk order.
  std::vector<Element> x_subsequence(const std::vector<bool>& node_visible,
                                     const std::vector<bool>& edge_visible) const;

  friend bool operator==(const Walk&, const Walk&) = default;
};

bool is_valid_walk(const Graph& g, const Walk& w);

// Records v -> (v', e_v) for each expanded node, with reverse lookup from
// internal edges. node_expansion preserves the ids of the original edges.
struct ExpansionMap {
  std::vector<NodeId> prime;          // per original node; -1 if not expanded
  std::vector<EdgeId> internal_edge;  // per original node; -1 if not expanded
  std::vector<NodeId> internal_owner; // per expanded edge; -1 unless internal

  bool expanded(NodeId v) const { return prime[v] >= 0; }
  bool is_internal(EdgeId e) const { return internal_owner[e] >= 0; }
};

// Edge multiplicities of a merged simple graph. The representative original
// id of a merged edge is the smallest one, so originals[e].front() is stable.
struct MultiplicityMap {
  std::vector<int> count;                      // per merged edge, >= 1
  std::vector<std::vector<EdgeId>> originals;  // per merged edge, ascending
};

// Subset of nodes and edges named by a visibility file.
struct VisibilitySet {
  std::vector<NodeId> nodes;
  std::vector<EdgeId> edges;
};

// Edge-list format: one edge per line as `<tail> <head>`, whitespace
// separated; `#` lines and blank lines are ignored; repeated lines denote
// parallel edges.
Graph parse_graph(std::string_view text);

// Visibility format: `node <token>` or `edge <tail> <head> [ordinal]` where
// the 1-based ordinal picks among parallel edges (default 1).
VisibilitySet parse_visibility(std::string_view text, const Graph& g);

// Splits each listed v into v -> v' (internal edge e_v) and re-tails the
// out-edges of v to v'. In-edges of v are untouched. v' is named v + "'".
std::pair<Graph, ExpansionMap> node_expansion(const Graph& g,
                                              std::span<const NodeId> to_expand);

// Collapses parallel edges to one edge per (tail, head) pair.
std::pair<Graph, MultiplicityMap> merge_parallel_edges(const Graph& g);

// Nodes reachable from start in the given direction, never traversing a
// forbidden edge nor leaving restrict_to (when given). Sorted ascending.
std::vector<NodeId> reach(const Graph& g, NodeId start, Direction dir,
                          std::span<const EdgeId> forbidden = {},
                          const std::vector<NodeId>* restrict_to = nullptr);

}  // namespace stsafe
