#include "stsafe/generators.hpp"

#include <algorithm>
#include <random>

namespace stsafe {

namespace {

// mt19937_64 output is pinned by the standard; modulo by rejection keeps the
// stream identical across platforms.
std::uint64_t rng_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// s = v0, t = vk, with the k chain edges added first (edge ids 0..k-1).
std::vector<NodeId> chain_nodes(Graph& g, int k) {
  g.reserve(k + 1, k);
  std::vector<NodeId> v(k + 1);
  v[0] = g.intern_node("s");
  for (int i = 1; i < k; ++i) v[i] = g.intern_node("u" + std::to_string(i));
  v[k] = g.intern_node("t");
  for (int i = 0; i < k; ++i) g.add_edge(v[i], v[i + 1]);
  return v;
}

GeneratedInstance random_instance(const FamilySpec& spec, bool multigraph) {
  std::mt19937_64 rng(spec.seed * 0x9e3779b97f4a7c15ull + 1);
  const int n = spec.k;
  Graph g;
  std::vector<NodeId> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = g.intern_node("n" + std::to_string(i));
  NodeId s = ids[0], t = ids[n - 1];

  // plant a random s-t path over a shuffled subset of the middle nodes
  std::vector<NodeId> middle(ids.begin() + 1, ids.end() - 1);
  for (size_t i = middle.size(); i > 1; --i)
    std::swap(middle[i - 1], middle[rng_below(rng, i)]);
  size_t hops = middle.empty() ? 0 : rng_below(rng, middle.size() + 1);
  NodeId prev = s;
  for (size_t i = 0; i < hops; ++i) {
    g.add_edge(prev, middle[i]);
    prev = middle[i];
  }
  g.add_edge(prev, t);

  std::uint64_t extras = rng_below(rng, static_cast<std::uint64_t>(n) + 3);
  for (std::uint64_t i = 0; i < extras; ++i) {
    NodeId a = ids[rng_below(rng, n)];
    NodeId b = ids[rng_below(rng, n)];
    bool duplicate = false;
    for (EdgeId e : g.out_edges(a)) duplicate |= g.head(e) == b;
    if (!duplicate) g.add_edge(a, b);
  }

  if (multigraph) {
    const int m = g.edge_count();
    for (EdgeId e = 0; e < m; ++e) {
      std::uint64_t roll = rng_below(rng, 10);
      int copies = roll < 6 ? 0 : roll < 9 ? 1 : 2;  // multiplicity 1..3
      for (int c = 0; c < copies; ++c) g.add_edge(g.tail(e), g.head(e));
    }
  }
  return {std::move(g), s, t};
}

}  // namespace

GeneratedInstance generate(const FamilySpec& spec) {
  const int k = spec.k;
  if (k < 2) throw Error("generate: k must be >= 2");
  switch (spec.kind) {
    case FamilyKind::Chain: {
      Graph g;
      std::vector<NodeId> v = chain_nodes(g, k);
      return {std::move(g), v[0], v[k]};
    }
    case FamilyKind::JunctionCycles: {
      Graph g;
      std::vector<NodeId> v = chain_nodes(g, k);
      for (int i = 1; i < k; ++i) {
        NodeId c = g.intern_node("c" + std::to_string(i));
        g.add_edge(v[i], c);
        g.add_edge(c, v[i]);
      }
      return {std::move(g), v[0], v[k]};
    }
    case FamilyKind::QuadraticBreakers: {
      Graph g;
      std::vector<NodeId> v = chain_nodes(g, k);
      for (int i = 1; i < k; ++i) g.add_edge(v[i], v[i]);  // loop: breaker of length 0
      // backward edge v_j -> v_{i-1} plants the breaker with range [i, j]
      for (int i = 2; i <= k - 1; ++i)
        for (int j = i; j <= k - 1; ++j) g.add_edge(v[j], v[i - 1]);
      return {std::move(g), v[0], v[k]};
    }
    case FamilyKind::QuadraticSolution: {
      if (k % 2 != 0) throw Error("generate: quadratic-solution needs even k");
      Graph g;
      std::vector<NodeId> v = chain_nodes(g, k);
      if (k == 2) {
        g.add_edge(v[1], v[1]);  // the lone split
      } else {
        // staircase (r+1, r+k/2-1) for r = 1..k/2
        for (int r = 1; r <= k / 2; ++r) {
          int start = r + 1, end = r + k / 2 - 1;
          g.add_edge(v[end], v[start - 1]);
        }
      }
      return {std::move(g), v[0], v[k]};
    }
    case FamilyKind::RandomDigraph:
      return random_instance(spec, false);
    case FamilyKind::RandomMultigraph:
      return random_instance(spec, true);
  }
  throw Error("generate: unknown family");
}

std::optional<FamilyKind> family_from_name(std::string_view name) {
  if (name == "chain") return FamilyKind::Chain;
  if (name == "junction-cycles") return FamilyKind::JunctionCycles;
  if (name == "quadratic-breakers") return FamilyKind::QuadraticBreakers;
  if (name == "quadratic-solution") return FamilyKind::QuadraticSolution;
  if (name == "random-digraph") return FamilyKind::RandomDigraph;
  if (name == "random-multigraph") return FamilyKind::RandomMultigraph;
  return std::nullopt;
}

std::string_view family_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::Chain: return "chain";
    case FamilyKind::JunctionCycles: return "junction-cycles";
    case FamilyKind::QuadraticBreakers: return "quadratic-breakers";
    case FamilyKind::QuadraticSolution: return "quadratic-solution";
    case FamilyKind::RandomDigraph: return "random-digraph";
    case FamilyKind::RandomMultigraph: return "random-multigraph";
  }
  return "unknown";
}

}  // namespace stsafe
