#include "stsafe/graph.hpp"

#include <algorithm>
#include <cctype>

namespace stsafe {

void Graph::reserve(int nodes, int edges) {
  names_.reserve(nodes);
  ids_.reserve(nodes);
  out_.reserve(nodes);
  in_.reserve(nodes);
  edges_.reserve(edges);
}

NodeId Graph::intern_node(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  NodeId id = static_cast<NodeId>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

EdgeId Graph::add_edge(NodeId tail, NodeId head) {
  EdgeId id = static_cast<EdgeId>(edges_.size());
  edges_.push_back({tail, head});
  out_[tail].push_back(id);
  in_[head].push_back(id);
  return id;
}

std::optional<NodeId> Graph::find_node(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

NodeId Graph::require_node(std::string_view name) const {
  auto id = find_node(name);
  if (!id) throw Error("unknown node: " + std::string(name));
  return *id;
}

std::vector<Element> Walk::x_subsequence(const std::vector<bool>& node_visible,
                                         const std::vector<bool>& edge_visible) const {
  std::vector<Element> out;
  if (nodes.empty()) return out;
  if (node_visible[nodes[0]]) out.push_back(node_element(nodes[0]));
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edge_visible[edges[i]]) out.push_back(edge_element(edges[i]));
    if (node_visible[nodes[i + 1]]) out.push_back(node_element(nodes[i + 1]));
  }
  return out;
}

bool is_valid_walk(const Graph& g, const Walk& w) {
  if (w.nodes.size() != w.edges.size() + 1) return false;
  for (size_t i = 0; i < w.edges.size(); ++i) {
    if (g.tail(w.edges[i]) != w.nodes[i]) return false;
    if (g.head(w.edges[i]) != w.nodes[i + 1]) return false;
  }
  return true;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view line = (nl == std::string_view::npos)
                                ? text.substr(pos)
                                : text.substr(pos, nl - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

bool is_comment_or_blank(std::string_view line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;
}

}  // namespace

Graph parse_graph(std::string_view text) {
  Graph g;
  for_each_line(text, [&](int line_no, std::string_view line) {
    if (is_comment_or_blank(line)) return;
    auto tokens = split_ws(line);
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected `<tail> <head>`, got " +
                                    std::to_string(tokens.size()) + " token(s)");
    if (tokens[0].empty() || tokens[1].empty())
      throw ParseError(line_no, "empty endpoint token");
    NodeId tail = g.intern_node(tokens[0]);
    NodeId head = g.intern_node(tokens[1]);
    g.add_edge(tail, head);
  });
  return g;
}

VisibilitySet parse_visibility(std::string_view text, const Graph& g) {
  VisibilitySet x;
  std::vector<bool> node_seen(g.node_count(), false);
  std::vector<bool> edge_seen(g.edge_count(), false);
  for_each_line(text, [&](int line_no, std::string_view line) {
    if (is_comment_or_blank(line)) return;
    auto tokens = split_ws(line);
    if (tokens[0] == "node") {
      if (tokens.size() != 2) throw ParseError(line_no, "expected `node <token>`");
      auto id = g.find_node(tokens[1]);
      if (!id) throw ParseError(line_no, "unknown node: " + std::string(tokens[1]));
      if (!node_seen[*id]) {
        node_seen[*id] = true;
        x.nodes.push_back(*id);
      }
    } else if (tokens[0] == "edge") {
      if (tokens.size() != 3 && tokens.size() != 4)
        throw ParseError(line_no, "expected `edge <tail> <head> [ordinal]`");
      auto tail = g.find_node(tokens[1]);
      auto head = g.find_node(tokens[2]);
      if (!tail || !head)
        throw ParseError(line_no, "unknown endpoint in edge line");
      int ordinal = 1;
      if (tokens.size() == 4) {
        ordinal = 0;
        for (char c : tokens[3]) {
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError(line_no, "ordinal must be a positive integer");
          ordinal = ordinal * 10 + (c - '0');
        }
        if (ordinal < 1) throw ParseError(line_no, "ordinal must be >= 1");
      }
      // Parallel edges are ranked by edge id.
      EdgeId found = -1;
      int rank = 0;
      for (EdgeId e : g.out_edges(*tail)) {
        if (g.head(e) == *head && ++rank == ordinal) {
          found = e;
          break;
        }
      }
      if (found < 0)
        throw ParseError(line_no, "no such edge: " + std::string(tokens[1]) + " -> " +
                                      std::string(tokens[2]) + " #" + std::to_string(ordinal));
      if (!edge_seen[found]) {
        edge_seen[found] = true;
        x.edges.push_back(found);
      }
    } else {
      throw ParseError(line_no, "expected `node ...` or `edge ...`");
    }
  });
  return x;
}

std::pair<Graph, ExpansionMap> node_expansion(const Graph& g,
                                              std::span<const NodeId> to_expand) {
  std::vector<bool> expand(g.node_count(), false);
  for (NodeId v : to_expand) {
    if (v < 0 || v >= g.node_count()) throw Error("node_expansion: unknown node id");
    expand[v] = true;
  }

  Graph out;
  out.reserve(2 * g.node_count(), g.edge_count() + g.node_count());
  ExpansionMap map;
  map.prime.assign(g.node_count(), -1);
  map.internal_edge.assign(g.node_count(), -1);

  for (NodeId v = 0; v < g.node_count(); ++v) out.intern_node(g.name(v));
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (expand[v]) map.prime[v] = out.intern_node(g.name(v) + "'");
  }

  // Original edges keep their ids; only expanded tails move to the prime.
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    NodeId t = g.tail(e);
    out.add_edge(expand[t] ? map.prime[t] : t, g.head(e));
  }
  map.internal_owner.assign(g.edge_count(), -1);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (!expand[v]) continue;
    EdgeId e = out.add_edge(v, map.prime[v]);
    map.internal_edge[v] = e;
    map.internal_owner.push_back(v);
  }
  return {std::move(out), std::move(map)};
}

std::pair<Graph, MultiplicityMap> merge_parallel_edges(const Graph& g) {
  Graph out;
  MultiplicityMap map;
  for (NodeId v = 0; v < g.node_count(); ++v) out.intern_node(g.name(v));

  // Scanning in id order makes the merged edge represent its smallest
  // original id.
  std::unordered_map<std::uint64_t, EdgeId> merged;
  merged.reserve(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    std::uint64_t key = (static_cast<std::uint64_t>(g.tail(e)) << 32) |
                        static_cast<std::uint32_t>(g.head(e));
    auto it = merged.find(key);
    if (it == merged.end()) {
      EdgeId id = out.add_edge(g.tail(e), g.head(e));
      merged.emplace(key, id);
      map.count.push_back(1);
      map.originals.push_back({e});
    } else {
      ++map.count[it->second];
      map.originals[it->second].push_back(e);
    }
  }
  return {std::move(out), std::move(map)};
}

std::vector<NodeId> reach(const Graph& g, NodeId start, Direction dir,
                          std::span<const EdgeId> forbidden,
                          const std::vector<NodeId>* restrict_to) {
  if (start < 0 || start >= g.node_count()) throw Error("reach: unknown start node");

  std::vector<bool> banned(g.edge_count(), false);
  for (EdgeId e : forbidden) banned[e] = true;
  std::vector<bool> allowed_node;
  if (restrict_to) {
    allowed_node.assign(g.node_count(), false);
    for (NodeId v : *restrict_to) allowed_node[v] = true;
    if (!allowed_node[start]) throw Error("reach: start outside restriction");
  }

  std::vector<bool> visited(g.node_count(), false);
  std::vector<NodeId> stack{start};
  visited[start] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    auto edges = (dir == Direction::Forward) ? g.out_edges(u) : g.in_edges(u);
    for (EdgeId e : edges) {
      if (banned[e]) continue;
      NodeId v = (dir == Direction::Forward) ? g.head(e) : g.tail(e);
      if (visited[v]) continue;
      if (restrict_to && !allowed_node[v]) continue;
      visited[v] = true;
      stack.push_back(v);
    }
  }

  std::vector<NodeId> out;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (visited[v]) out.push_back(v);
  return out;
}

}  // namespace stsafe
