#include "stsafe/render.hpp"

namespace stsafe {

std::string render_edge(const Graph& g, EdgeId e) {
  NodeId u = g.tail(e), v = g.head(e);
  int ordinal = 0, copies = 0;
  for (EdgeId other : g.out_edges(u)) {
    if (g.head(other) != v) continue;
    ++copies;
    if (other == e) ordinal = copies;
    // out-lists are in id order, so this rank is the visibility-file ordinal
  }
  std::string s = "(" + g.name(u) + "," + g.name(v) + ")";
  if (copies > 1) s += "#" + std::to_string(ordinal);
  return s;
}

std::string render_expanded_edge(const Graph& original, const ExpansionMap& map, EdgeId e) {
  if (map.is_internal(e)) return original.name(map.internal_owner[e]);
  return render_edge(original, e);
}

std::string render_walk(const Graph& g, const Walk& w) {
  std::string s = g.name(w.nodes[0]);
  for (size_t i = 0; i < w.edges.size(); ++i) {
    s += " " + render_edge(g, w.edges[i]);
    s += " " + g.name(w.nodes[i + 1]);
  }
  return s;
}

std::string render_node_sequence(const Graph& g, const std::vector<NodeId>& nodes) {
  std::string s = "(";
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) s += ",";
    s += g.name(nodes[i]);
  }
  return s + ")";
}

}  // namespace stsafe
