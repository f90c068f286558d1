#include "stsafe/oracles.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <unordered_map>

namespace stsafe {

VisibilityMask VisibilityMask::none(const Graph& g) {
  return {std::vector<bool>(g.node_count(), false), std::vector<bool>(g.edge_count(), false)};
}
VisibilityMask VisibilityMask::all_edges(const Graph& g) {
  return {std::vector<bool>(g.node_count(), false), std::vector<bool>(g.edge_count(), true)};
}
VisibilityMask VisibilityMask::all_nodes(const Graph& g) {
  return {std::vector<bool>(g.node_count(), true), std::vector<bool>(g.edge_count(), false)};
}
VisibilityMask VisibilityMask::everything(const Graph& g) {
  return {std::vector<bool>(g.node_count(), true), std::vector<bool>(g.edge_count(), true)};
}
VisibilityMask VisibilityMask::from_set(const Graph& g, const VisibilitySet& x) {
  VisibilityMask m = none(g);
  for (NodeId v : x.nodes) m.node[v] = true;
  for (EdgeId e : x.edges) m.edge[e] = true;
  return m;
}

OracleGuards OracleGuards::unlimited() {
  OracleGuards g;
  g.path_trail_max_edges = std::numeric_limits<int>::max();
  g.walk_max_edges = std::numeric_limits<int>::max();
  g.walk_max_bound = std::numeric_limits<int>::max();
  return g;
}

namespace {

VisibilityMask effective_mask(const Graph& g, const CandidateModel& model) {
  if (model.visibility) return *model.visibility;
  if (model.kind == CandidateKind::MultiTrails) return VisibilityMask::all_nodes(g);
  return VisibilityMask::all_edges(g);
}

void check_guards(const Graph& g, const CandidateModel& model, const OracleGuards& guards) {
  if (model.kind == CandidateKind::Walks) {
    if (g.edge_count() > guards.walk_max_edges)
      throw GuardError("walk oracle: graph exceeds " +
                       std::to_string(guards.walk_max_edges) + " edges");
    if (model.walk_bound > guards.walk_max_bound)
      throw GuardError("walk oracle: bound exceeds " +
                       std::to_string(guards.walk_max_bound));
  } else if (g.edge_count() > guards.path_trail_max_edges) {
    throw GuardError("path/trail oracle: graph exceeds " +
                     std::to_string(guards.path_trail_max_edges) + " edges");
  }
}

// Substring matching automaton over element symbols. Pattern elements map to
// dense symbols; everything else shares a catch-all symbol, which is sound
// because any non-pattern symbol resets matching the same way.
class Matcher {
 public:
  explicit Matcher(std::span<const Element> pattern) {
    length_ = static_cast<int>(pattern.size());
    pat_.reserve(length_);
    for (const Element& el : pattern) {
      auto key = encode(el);
      auto it = symbol_.find(key);
      int sym;
      if (it == symbol_.end()) {
        sym = static_cast<int>(symbol_.size());
        symbol_.emplace(key, sym);
      } else {
        sym = it->second;
      }
      pat_.push_back(sym);
    }
    sigma_ = static_cast<int>(symbol_.size()) + 1;  // + catch-all
    delta_.assign(static_cast<size_t>(length_) * sigma_, 0);
    for (int q = 0; q < length_; ++q) {
      for (int c = 0; c < sigma_; ++c) {
        if (c == pat_[q])
          delta_[q * sigma_ + c] = q + 1;
        else
          delta_[q * sigma_ + c] = q == 0 ? 0 : delta_[fail(q) * sigma_ + c];
      }
    }
  }

  int length() const { return length_; }

  // State after emitting el from q; length() is the dead (matched) state.
  int advance(int q, const Element& el) const {
    auto it = symbol_.find(encode(el));
    int sym = it == symbol_.end() ? sigma_ - 1 : it->second;
    return delta_[q * sigma_ + sym];
  }

 private:
  static std::uint64_t encode(const Element& el) {
    return (static_cast<std::uint64_t>(el.kind == Element::Kind::Edge) << 32) |
           static_cast<std::uint32_t>(el.id);
  }

  int fail(int q) const {
    // longest proper border of pat_[0..q-1], via the automaton built so far
    int f = 0;
    for (int i = 1; i < q; ++i) f = delta_[f * sigma_ + pat_[i]];
    return f;
  }

  int length_ = 0;
  int sigma_ = 1;
  std::vector<int> pat_;
  std::vector<int> delta_;
  std::unordered_map<std::uint64_t, int> symbol_;
};

struct Emitter {
  const VisibilityMask& mask;
  const Matcher& m;

  int start(NodeId s) const {
    return mask.node[s] ? m.advance(0, node_element(s)) : 0;
  }
  // state after traversing e into its head; length() once matched
  int step(int q, EdgeId e, NodeId head) const {
    if (mask.edge[e]) {
      q = m.advance(q, edge_element(e));
      if (q == m.length()) return q;
    }
    if (mask.node[head]) q = m.advance(q, node_element(head));
    return q;
  }
};

// Backtracking search for one candidate whose projection avoids the pattern.
// Candidates that complete a match are pruned: every extension of a matched
// prefix also contains the pattern. The first arrival at t along an avoiding
// candidate is itself an avoiding candidate, so the search can stop there.
//
// Trail searches with no visible edge consume parallel copies as a per-pair
// capacity instead of distinct ids: copies are interchangeable in every
// projection, and collapsing them avoids enumerating their orderings.
class AvoidSearch {
 public:
  AvoidSearch(const Graph& g, NodeId t, bool trail_mode, const VisibilityMask& mask,
              const Matcher& m, const OracleGuards& guards)
      : g_(g),
        t_(t),
        trail_mode_(trail_mode),
        emit_{mask, m},
        dead_(m.length()),
        guards_(guards) {
    if (!trail_mode_) {
      visited_node_.assign(g.node_count(), false);
      return;
    }
    collapse_ = std::find(mask.edge.begin(), mask.edge.end(), true) == mask.edge.end();
    if (!collapse_) {
      used_edge_.assign(g.edge_count(), false);
      return;
    }
    std::unordered_map<std::uint64_t, int> groups;
    std::vector<int> group_of(g.edge_count(), -1);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      std::uint64_t key =
          (static_cast<std::uint64_t>(g.tail(e)) << 32) | static_cast<std::uint32_t>(g.head(e));
      auto [it, fresh] = groups.try_emplace(key, static_cast<int>(capacity_.size()));
      if (fresh) capacity_.push_back(0);
      group_of[e] = it->second;
      ++capacity_[it->second];
    }
    used_count_.assign(capacity_.size(), 0);
    grouped_out_.resize(g.node_count());
    std::vector<bool> seen(capacity_.size(), false);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      for (EdgeId e : g.out_edges(v)) {
        if (!seen[group_of[e]]) {
          seen[group_of[e]] = true;
          grouped_out_[v].push_back({g.head(e), group_of[e]});
        }
      }
      for (const auto& [head, grp] : grouped_out_[v]) seen[grp] = false;
    }
  }

  bool run(NodeId s) {
    int q0 = emit_.start(s);
    if (q0 == dead_) return false;
    if (s == t_) return true;
    if (!trail_mode_) visited_node_[s] = true;
    return dfs(s, q0);
  }

 private:
  bool dfs(NodeId u, int q) {
    if (trail_mode_ && collapse_) {
      for (const auto& [v, grp] : grouped_out_[u]) {
        if (++steps_ > guards_.step_cap) throw GuardError("oracle witness search step cap");
        if (used_count_[grp] == capacity_[grp]) continue;
        int q2 = emit_.mask.node[v] ? emit_.m.advance(q, node_element(v)) : q;
        if (q2 == dead_) continue;
        if (v == t_) return true;
        ++used_count_[grp];
        if (dfs(v, q2)) return true;
        --used_count_[grp];
      }
      return false;
    }
    for (EdgeId e : g_.out_edges(u)) {
      if (++steps_ > guards_.step_cap) throw GuardError("oracle witness search step cap");
      NodeId v = g_.head(e);
      if (trail_mode_ ? used_edge_[e] : visited_node_[v]) continue;
      int q2 = emit_.step(q, e, v);
      if (q2 == dead_) continue;
      if (v == t_) return true;
      if (trail_mode_) {
        used_edge_[e] = true;
        if (dfs(v, q2)) return true;
        used_edge_[e] = false;
      } else {
        visited_node_[v] = true;
        if (dfs(v, q2)) return true;
        visited_node_[v] = false;
      }
    }
    return false;
  }

  const Graph& g_;
  NodeId t_;
  bool trail_mode_;
  bool collapse_ = false;
  Emitter emit_;
  int dead_;
  const OracleGuards& guards_;
  std::vector<bool> visited_node_, used_edge_;
  std::vector<int> capacity_, used_count_;
  std::vector<std::vector<std::pair<NodeId, int>>> grouped_out_;
  std::uint64_t steps_ = 0;
};

// Shortest avoiding walk via BFS over (node, matcher state).
bool walk_avoider_exists(const Graph& g, NodeId s, NodeId t, int bound,
                         const VisibilityMask& mask, const Matcher& m) {
  const int dead = m.length();
  Emitter emit{mask, m};
  int q0 = emit.start(s);
  if (q0 == dead) return false;
  if (s == t) return true;

  const int states = dead;  // live states 0..dead-1
  std::vector<int> dist(static_cast<size_t>(g.node_count()) * states, -1);
  std::deque<std::pair<NodeId, int>> queue;
  dist[s * states + q0] = 0;
  queue.emplace_back(s, q0);
  while (!queue.empty()) {
    auto [u, q] = queue.front();
    queue.pop_front();
    int d = dist[u * states + q];
    if (d >= bound) continue;
    for (EdgeId e : g.out_edges(u)) {
      NodeId v = g.head(e);
      int q2 = emit.step(q, e, v);
      if (q2 == dead) continue;
      if (v == t) return true;
      if (dist[v * states + q2] < 0) {
        dist[v * states + q2] = d + 1;
        queue.emplace_back(v, q2);
      }
    }
  }
  return false;
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t c = a + b;
  return c < a ? std::numeric_limits<std::uint64_t>::max() : c;
}

// Any s-t path, as edge ids; nullopt when t is unreachable.
std::optional<std::vector<EdgeId>> any_path(const Graph& g, NodeId s, NodeId t) {
  std::vector<EdgeId> parent(g.node_count(), -1);
  std::vector<bool> visited(g.node_count(), false);
  std::deque<NodeId> queue{s};
  visited[s] = true;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    if (u == t) break;
    for (EdgeId e : g.out_edges(u)) {
      if (!visited[g.head(e)]) {
        visited[g.head(e)] = true;
        parent[g.head(e)] = e;
        queue.push_back(g.head(e));
      }
    }
  }
  if (!visited[t]) return std::nullopt;
  std::vector<EdgeId> path;
  for (NodeId v = t; v != s; v = g.tail(parent[v])) path.push_back(parent[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool reaches(const Graph& g, NodeId s, NodeId t, std::span<const EdgeId> forbidden = {},
             NodeId removed_node = -1) {
  std::vector<bool> banned(g.edge_count(), false);
  for (EdgeId e : forbidden) banned[e] = true;
  if (removed_node == s) return false;
  std::vector<bool> visited(g.node_count(), false);
  std::vector<NodeId> stack{s};
  visited[s] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    if (u == t) return true;
    for (EdgeId e : g.out_edges(u)) {
      NodeId v = g.head(e);
      if (banned[e] || v == removed_node || visited[v]) continue;
      if (!visited[v]) {
        visited[v] = true;
        stack.push_back(v);
      }
    }
  }
  return false;
}

class Enumerator {
 public:
  Enumerator(const Graph& g, NodeId s, NodeId t, const CandidateModel& model,
             const OracleGuards& guards, std::vector<Walk>* sink)
      : g_(g), s_(s), t_(t), model_(model), guards_(guards), sink_(sink) {
    if (model.kind == CandidateKind::Paths) visited_.assign(g.node_count(), false);
    if (model.kind == CandidateKind::Trails || model.kind == CandidateKind::MultiTrails)
      used_.assign(g.edge_count(), false);
  }

  std::uint64_t run() {
    walk_.nodes.push_back(s_);
    if (s_ == t_) record();
    if (model_.kind == CandidateKind::Paths && s_ != t_) visited_[s_] = true;
    extend(s_);
    return count_;
  }

 private:
  void record() {
    count_ = saturating_add(count_, 1);
    if (sink_) {
      if (sink_->size() >= guards_.candidate_cap)
        throw GuardError("oracle enumeration candidate cap");
      sink_->push_back(walk_);
    }
  }

  void extend(NodeId u) {
    if (model_.kind == CandidateKind::Walks &&
        static_cast<int>(walk_.edges.size()) >= model_.walk_bound)
      return;
    for (EdgeId e : g_.out_edges(u)) {
      if (++steps_ > guards_.step_cap) throw GuardError("oracle enumeration step cap");
      NodeId v = g_.head(e);
      bool at_end = false;
      switch (model_.kind) {
        case CandidateKind::Paths:
          if (v == t_) {
            at_end = true;  // a path cannot be extended past its endpoint
          } else if (visited_[v]) {
            continue;
          }
          break;
        case CandidateKind::Trails:
        case CandidateKind::MultiTrails:
          if (used_[e]) continue;
          break;
        case CandidateKind::Walks:
          break;
      }
      walk_.nodes.push_back(v);
      walk_.edges.push_back(e);
      if (v == t_) record();
      if (model_.kind == CandidateKind::Paths) {
        if (!at_end) {
          visited_[v] = true;
          extend(v);
          visited_[v] = false;
        }
      } else if (model_.kind == CandidateKind::Walks) {
        extend(v);
      } else {
        used_[e] = true;
        extend(v);
        used_[e] = false;
      }
      walk_.nodes.pop_back();
      walk_.edges.pop_back();
    }
  }

  const Graph& g_;
  NodeId s_, t_;
  CandidateModel model_;
  const OracleGuards& guards_;
  std::vector<Walk>* sink_;
  Walk walk_;
  std::vector<bool> visited_, used_;
  std::uint64_t steps_ = 0, count_ = 0;
};

}  // namespace

std::vector<Walk> enumerate_candidates(const Graph& g, NodeId s, NodeId t,
                                       const CandidateModel& model,
                                       const OracleGuards& guards) {
  check_guards(g, model, guards);
  std::vector<Walk> out;
  Enumerator(g, s, t, model, guards, &out).run();
  return out;
}

std::uint64_t count_candidates(const Graph& g, NodeId s, NodeId t,
                               const CandidateModel& model, const OracleGuards& guards) {
  check_guards(g, model, guards);
  if (model.kind == CandidateKind::Walks) {
    // layered count, saturating
    std::vector<std::uint64_t> cur(g.node_count(), 0), next(g.node_count(), 0);
    cur[s] = 1;
    std::uint64_t total = s == t ? 1 : 0;
    for (int step = 1; step <= model.walk_bound; ++step) {
      std::fill(next.begin(), next.end(), 0);
      for (NodeId u = 0; u < g.node_count(); ++u) {
        if (cur[u] == 0) continue;
        for (EdgeId e : g.out_edges(u)) next[g.head(e)] = saturating_add(next[g.head(e)], cur[u]);
      }
      total = saturating_add(total, next[t]);
      std::swap(cur, next);
    }
    return total;
  }
  return Enumerator(g, s, t, model, guards, nullptr).run();
}

bool oracle_safe(const Graph& g, NodeId s, NodeId t, const CandidateModel& model,
                 std::span<const Element> query, const OracleGuards& guards) {
  if (query.empty()) throw Error("oracle_safe: empty query");
  check_guards(g, model, guards);
  VisibilityMask mask = effective_mask(g, model);
  Matcher matcher(query);
  switch (model.kind) {
    case CandidateKind::Walks:
      return !walk_avoider_exists(g, s, t, model.walk_bound, mask, matcher);
    case CandidateKind::Paths:
      return !AvoidSearch(g, t, false, mask, matcher, guards).run(s);
    case CandidateKind::Trails:
    case CandidateKind::MultiTrails:
      return !AvoidSearch(g, t, true, mask, matcher, guards).run(s);
  }
  return false;
}

bool detour_decide(const Graph& g, NodeId u, NodeId v, NodeId w, const OracleGuards& guards) {
  if (u == v || u == w || v == w) throw Error("detour_decide: nodes must be distinct");
  if (g.edge_count() > guards.path_trail_max_edges)
    throw GuardError("detour oracle: graph too large");
  std::vector<bool> visited(g.node_count(), false);
  visited[u] = true;
  std::uint64_t steps = 0;
  auto dfs = [&](auto&& self, NodeId x, bool seen_w) -> bool {
    if (x == v) return seen_w;
    for (EdgeId e : g.out_edges(x)) {
      if (++steps > guards.step_cap) throw GuardError("detour oracle step cap");
      NodeId y = g.head(e);
      if (visited[y]) continue;
      visited[y] = true;
      bool hit = self(self, y, seen_w || y == w);
      visited[y] = false;
      if (hit) return true;
    }
    return false;
  };
  return dfs(dfs, u, false);
}

DetourReduction build_detour_reduction(const Graph& g, NodeId u, NodeId v, NodeId w,
                                       RestrictMode mode) {
  if (u == v || u == w || v == w) throw Error("build_detour_reduction: nodes must be distinct");
  std::vector<NodeId> all(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) all[i] = i;

  DetourReduction red;
  auto [expanded, map] = node_expansion(g, all);
  red.graph = std::move(expanded);
  red.expansion = std::move(map);
  // Every s-t path of the gadget starts with e_u and ends with e_v, so the
  // query is adjacent in the projection exactly when the path avoids w.
  red.source = u;
  red.target = red.expansion.prime[v];
  if (mode == RestrictMode::Edges) {
    red.x.edges = {red.expansion.internal_edge[u], red.expansion.internal_edge[w],
                   red.expansion.internal_edge[v]};
    red.query = {edge_element(red.expansion.internal_edge[u]),
                 edge_element(red.expansion.internal_edge[v])};
  } else {
    red.x.nodes = {red.source, w, red.target};
    red.query = {node_element(red.source), node_element(red.target)};
  }
  return red;
}

std::vector<EdgeId> oracle_bridge_sequence(const Graph& g, NodeId s, NodeId t) {
  auto path = any_path(g, s, t);
  if (!path) throw UnreachableError("no s-t path");
  std::vector<EdgeId> bridges;
  for (EdgeId e : *path) {
    EdgeId forbidden[] = {e};
    if (!reaches(g, s, t, forbidden)) bridges.push_back(e);
  }
  // every bridge lies on every s-t path, so the path order is the visit order
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    EdgeId forbidden[] = {e};
    if (!reaches(g, s, t, forbidden) &&
        std::find(path->begin(), path->end(), e) == path->end())
      throw Error("oracle_bridge_sequence: bridge off the reference path");
  }
  return bridges;
}

std::vector<NodeId> oracle_articulation_sequence(const Graph& g, NodeId s, NodeId t) {
  auto path = any_path(g, s, t);
  if (!path) throw UnreachableError("no s-t path");
  std::vector<NodeId> path_nodes{s};
  for (EdgeId e : *path) path_nodes.push_back(g.head(e));
  std::vector<NodeId> points;
  for (NodeId v : path_nodes) {
    if (v == s || v == t || !reaches(g, s, t, {}, v)) points.push_back(v);
  }
  return points;
}

namespace {

// All maximal safe index ranges of `sequence` under anti-monotone safety.
std::vector<SafeInterval> maximal_ranges(int n, const std::function<bool(int, int)>& safe) {
  std::vector<std::vector<bool>> ok(n + 1, std::vector<bool>(n + 1, false));
  for (int p = 1; p <= n; ++p) {
    for (int q = p; q <= n; ++q) {
      if (!safe(p, q)) break;  // extending an unsafe range stays unsafe
      ok[p][q] = true;
    }
  }
  std::vector<SafeInterval> out;
  for (int p = 1; p <= n; ++p)
    for (int q = p; q <= n; ++q)
      if (ok[p][q] && (p == 1 || !ok[p - 1][q]) && (q == n || !ok[p][q + 1]))
        out.push_back({p, q});
  return out;
}

}  // namespace

OracleSolution oracle_max_safe_edges(const Graph& g, NodeId s, NodeId t,
                                     CandidateKind kind, const OracleGuards& guards) {
  std::vector<EdgeId> seq = oracle_bridge_sequence(g, s, t);
  CandidateModel model{kind, 2 * g.node_count(), std::nullopt};

  OracleSolution sol;
  const int n = static_cast<int>(seq.size());
  sol.intervals = maximal_ranges(n, [&](int p, int q) {
    // bridges that are not adjacent cannot appear consecutively in any
    // candidate's edge sequence
    for (int i = p; i < q; ++i)
      if (g.head(seq[i - 1]) != g.tail(seq[i])) return false;
    std::vector<Element> query;
    for (int i = p; i <= q; ++i) query.push_back(edge_element(seq[i - 1]));
    return oracle_safe(g, s, t, model, query, guards);
  });

  // an empty walk is maximal exactly when its node touches no bridge
  std::vector<bool> is_bridge_end(g.node_count(), false);
  for (EdgeId e : seq) {
    is_bridge_end[g.tail(e)] = true;
    is_bridge_end[g.head(e)] = true;
  }
  for (NodeId v : oracle_articulation_sequence(g, s, t))
    if (!is_bridge_end[v]) sol.singletons.push_back(v);
  return sol;
}

OracleSolution oracle_max_safe_x_walks(const Graph& g, NodeId s, NodeId t,
                                       const VisibilityMask& mask,
                                       std::vector<EdgeId>* sequence,
                                       const OracleGuards& guards) {
  std::vector<EdgeId> seq;
  for (EdgeId e : oracle_bridge_sequence(g, s, t))
    if (mask.edge[e]) seq.push_back(e);
  CandidateModel model{CandidateKind::Walks, 2 * g.node_count(), mask};

  OracleSolution sol;
  const int n = static_cast<int>(seq.size());
  sol.intervals = maximal_ranges(n, [&](int p, int q) {
    std::vector<Element> query;
    for (int i = p; i <= q; ++i) query.push_back(edge_element(seq[i - 1]));
    return oracle_safe(g, s, t, model, query, guards);
  });
  if (sequence) *sequence = std::move(seq);
  return sol;
}

OracleMTrails oracle_max_safe_mtrails(const Graph& g, NodeId s, NodeId t,
                                      const OracleGuards& guards) {
  OracleMTrails out;
  out.sequence = oracle_articulation_sequence(g, s, t);
  CandidateModel model{CandidateKind::MultiTrails, 0, std::nullopt};

  const int n = static_cast<int>(out.sequence.size());
  out.intervals = maximal_ranges(n, [&](int p, int q) {
    if (p == q) return true;  // articulation points are always safe alone
    std::vector<Element> query;
    for (int i = p; i <= q; ++i) query.push_back(node_element(out.sequence[i - 1]));
    return oracle_safe(g, s, t, model, query, guards);
  });
  // report multi-node sequences and single maximal nodes separately
  std::vector<SafeInterval> wide;
  for (const SafeInterval& iv : out.intervals) {
    if (iv.lo == iv.hi) {
      out.singletons.push_back(out.sequence[iv.lo - 1]);
    } else {
      std::vector<NodeId> nodes;
      for (int i = iv.lo; i <= iv.hi; ++i) nodes.push_back(out.sequence[i - 1]);
      out.node_sequences.push_back(std::move(nodes));
      wide.push_back(iv);
    }
  }
  out.intervals = std::move(wide);
  return out;
}

}  // namespace stsafe
