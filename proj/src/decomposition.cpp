#include "stsafe/decomposition.hpp"

#include <algorithm>
#include <deque>

namespace stsafe {

namespace {

// Any s-t path, as its edge sequence. Empty optional when t is unreachable.
std::optional<std::vector<EdgeId>> find_path(const Graph& g, NodeId s, NodeId t) {
  std::vector<EdgeId> parent(g.node_count(), -1);
  std::vector<bool> visited(g.node_count(), false);
  std::deque<NodeId> queue{s};
  visited[s] = true;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (u == t) break;
    for (EdgeId e : g.out_edges(u)) {
      NodeId v = g.head(e);
      if (visited[v]) continue;
      visited[v] = true;
      parent[v] = e;
      queue.push_back(v);
    }
  }
  if (!visited[t]) return std::nullopt;
  std::vector<EdgeId> path;
  for (NodeId v = t; v != s;) {
    EdgeId e = parent[v];
    path.push_back(e);
    v = g.tail(e);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

// Incremental unit-cut sweep over the residual of a fixed s-t path P.
// The search from s may traverse every non-P edge, every already unlocked
// P edge, and any P edge backwards (the residual arcs of the unit flow
// pushed along P). Whenever the search saturates with t unreached, exactly
// one locked P edge leaves the visited set: the next bridge. Everything
// visited since the previous bridge forms that bridge's component. Each edge
// is scanned O(1) times, so the sweep is O(m+n).
CutDecomposition bridge_decomposition(const Graph& g, NodeId s, NodeId t) {
  if (s < 0 || s >= g.node_count() || t < 0 || t >= g.node_count())
    throw Error("bridge_decomposition: unknown endpoint");
  auto path_opt = find_path(g, s, t);
  if (!path_opt) throw UnreachableError("no s-t path");
  const std::vector<EdgeId>& path = *path_opt;
  const int k = static_cast<int>(path.size());

  // path nodes v_0 = s .. v_k = t; pos[v] = j when v = v_j, else -1
  std::vector<NodeId> path_node(k + 1);
  path_node[0] = s;
  for (int j = 0; j < k; ++j) path_node[j + 1] = g.head(path[j]);
  std::vector<int> pos(g.node_count(), -1);
  for (int j = 0; j <= k; ++j) pos[path_node[j]] = j;

  std::vector<bool> locked(g.edge_count(), false);
  for (EdgeId e : path) locked[e] = true;

  CutDecomposition dec;
  dec.source = s;
  dec.target = t;
  dec.component.assign(g.node_count(), 0);

  std::vector<bool> visited(g.node_count(), false);
  std::vector<NodeId> queue;
  std::vector<NodeId> pending;  // visited but not yet assigned a component
  int max_tail = 0;             // largest j with tail(path[j-1]) visited

  auto visit = [&](NodeId v) {
    if (visited[v]) return;
    visited[v] = true;
    queue.push_back(v);
    pending.push_back(v);
    if (pos[v] >= 0 && pos[v] + 1 > max_tail && pos[v] < k) max_tail = pos[v] + 1;
  };

  auto drain = [&]() {
    while (!queue.empty()) {
      NodeId u = queue.back();
      queue.pop_back();
      for (EdgeId e : g.out_edges(u)) {
        if (!locked[e]) visit(g.head(e));
      }
      // residual arc of the path edge entering u
      if (pos[u] > 0) visit(path_node[pos[u] - 1]);
    }
  };

  visit(s);
  int unlocked = 0;  // path edges path[0..unlocked-1] are unlocked
  while (true) {
    drain();
    if (!visited[t]) {
      // max_tail names the unique locked path edge crossing the visited set.
      int j = max_tail;
      dec.bridges.push_back(path[j - 1]);
      for (NodeId v : pending) dec.component[v] = static_cast<int>(dec.bridges.size());
      pending.clear();
      // Unlock the prefix through the bridge. Heads of the intermediate
      // edges are already visited; only the bridge head is new.
      for (int i = unlocked; i < j; ++i) locked[path[i]] = false;
      unlocked = j;
      visit(path_node[j]);
    } else {
      // No bridge among the still-locked suffix: t is reachable without it.
      for (int i = unlocked; i < k; ++i) {
        locked[path[i]] = false;
        if (visited[path_node[i]]) visit(path_node[i + 1]);
      }
      unlocked = k;
      drain();
      int last = static_cast<int>(dec.bridges.size()) + 1;
      for (NodeId v : pending) dec.component[v] = last;
      pending.clear();
      break;
    }
  }

  dec.entrances.resize(dec.bridges.size() + 1);
  dec.exits.resize(dec.bridges.size() + 1);
  dec.entrances[0] = s;
  dec.exits[dec.bridges.size()] = t;
  for (size_t i = 0; i < dec.bridges.size(); ++i) {
    dec.exits[i] = g.tail(dec.bridges[i]);
    dec.entrances[i + 1] = g.head(dec.bridges[i]);
  }
  return dec;
}

CutDecomposition drop_bridges(const Graph& g, const CutDecomposition& dec,
                              const std::vector<bool>& keep) {
  CutDecomposition out;
  out.source = dec.source;
  out.target = dec.target;

  // new_index[c] = merged component index of old component c
  std::vector<int> new_index(dec.component_count() + 1, 0);
  int current = 1;
  for (int c = 1; c <= dec.component_count(); ++c) {
    new_index[c] = current;
    if (c <= static_cast<int>(dec.bridges.size()) && keep[c - 1]) {
      out.bridges.push_back(dec.bridges[c - 1]);
      ++current;
    }
  }

  out.component.assign(dec.component.size(), 0);
  for (size_t v = 0; v < dec.component.size(); ++v)
    if (dec.component[v] > 0) out.component[v] = new_index[dec.component[v]];

  out.entrances.resize(out.bridges.size() + 1);
  out.exits.resize(out.bridges.size() + 1);
  out.entrances[0] = dec.source;
  out.exits[out.bridges.size()] = dec.target;
  for (size_t i = 0; i < out.bridges.size(); ++i) {
    out.exits[i] = g.tail(out.bridges[i]);
    out.entrances[i + 1] = g.head(out.bridges[i]);
  }
  return out;
}

// Expand every node; with source s and target t' the internal edges of s and
// t lie on every path, so s and t are always reported. An original node v is
// an articulation point exactly when its internal edge is a bridge of the
// expanded graph; non-internal bridges are dropped and their components
// merged, then each node takes the merged component of its original copy.
ArticulationDecomposition articulation_decomposition(const Graph& g, NodeId s, NodeId t) {
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) all[v] = v;
  auto [expanded, map] = node_expansion(g, all);

  CutDecomposition dec = bridge_decomposition(expanded, s, map.prime[t]);

  std::vector<bool> keep(dec.bridges.size(), false);
  ArticulationDecomposition art;
  art.source = s;
  art.target = t;
  for (size_t i = 0; i < dec.bridges.size(); ++i) {
    NodeId owner = map.internal_owner[dec.bridges[i]];
    if (owner >= 0) {
      keep[i] = true;
      art.points.push_back(owner);
    }
  }

  CutDecomposition merged = drop_bridges(expanded, dec, keep);
  art.component.assign(g.node_count(), 0);
  for (NodeId v = 0; v < g.node_count(); ++v) art.component[v] = merged.component[v];
  return art;
}

}  // namespace stsafe
