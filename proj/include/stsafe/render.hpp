#pragma once

#include <string>

#include "stsafe/graph.hpp"

namespace stsafe {

// `(tail,head)`, with an ordinal suffix `#k` when parallel copies exist.
std::string render_edge(const Graph& g, EdgeId e);

// Edge of an expanded graph in terms of the original: internal edges render
// as their owner node, re-tailed originals render against `original`.
std::string render_expanded_edge(const Graph& original, const ExpansionMap& map, EdgeId e);

// Alternating `node (edge) node ...`; an empty walk is just its node.
std::string render_walk(const Graph& g, const Walk& w);

// `(n1,n2,...)`
std::string render_node_sequence(const Graph& g, const std::vector<NodeId>& nodes);

}  // namespace stsafe
