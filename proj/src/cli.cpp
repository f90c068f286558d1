#include "stsafe/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "stsafe/decomposition.hpp"
#include "stsafe/generators.hpp"
#include "stsafe/oracles.hpp"
#include "stsafe/render.hpp"
#include "stsafe/safety.hpp"
#include "stsafe/walk_safety.hpp"

namespace stsafe {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

OracleGuards guards_from_env() {
  OracleGuards guards;
  if (const char* env = std::getenv("STSAFE_ORACLE_LIMIT")) {
    int limit = std::atoi(env);
    if (limit > 0) {
      guards.path_trail_max_edges = limit;
      guards.walk_max_edges = limit;
      guards.walk_max_bound = std::max(guards.walk_max_bound, 4 * limit);
    }
  }
  return guards;
}

struct Loaded {
  Graph g;
  NodeId s = -1, t = -1;
};

Loaded load_input(const RunConfig& cfg) {
  if (cfg.input_path.empty()) throw Error("no input file given");
  Loaded l{parse_graph(read_file(cfg.input_path))};
  if (cfg.source.empty() || cfg.target.empty()) throw Error("missing --source/--target");
  l.s = l.g.require_node(cfg.source);
  l.t = l.g.require_node(cfg.target);
  return l;
}

std::string component_tag(int c) {
  return c > 0 ? std::to_string(c) : std::string("unreachable");
}

json intervals_json(std::span<const SafeInterval> intervals) {
  json arr = json::array();
  for (const SafeInterval& iv : intervals) arr.push_back({iv.lo, iv.hi});
  return arr;
}

int run_bridges(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Loaded l = load_input(cfg);
  CutDecomposition dec = bridge_decomposition(l.g, l.s, l.t);
  if (cfg.oracle_check) {
    if (dec.bridges != oracle_bridge_sequence(l.g, l.s, l.t)) {
      err << "oracle disagreement: bridge sequence\n";
      return 3;
    }
  }
  if (cfg.json) {
    json j;
    j["bridges"] = json::array();
    for (EdgeId e : dec.bridges) j["bridges"].push_back(render_edge(l.g, e));
    j["components"] = json::array();
    for (NodeId v = 0; v < l.g.node_count(); ++v)
      j["components"].push_back({{"node", l.g.name(v)}, {"index", dec.component[v]}});
    out << j.dump(2) << "\n";
  } else {
    for (EdgeId e : dec.bridges) out << render_edge(l.g, e) << "\n";
    for (NodeId v = 0; v < l.g.node_count(); ++v)
      out << "component " << l.g.name(v) << " " << component_tag(dec.component[v]) << "\n";
  }
  return 0;
}

int run_articulation(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Loaded l = load_input(cfg);
  ArticulationDecomposition art = articulation_decomposition(l.g, l.s, l.t);
  if (cfg.oracle_check) {
    if (art.points != oracle_articulation_sequence(l.g, l.s, l.t)) {
      err << "oracle disagreement: articulation sequence\n";
      return 3;
    }
  }
  if (cfg.json) {
    json j;
    j["articulation"] = json::array();
    for (NodeId v : art.points) j["articulation"].push_back(l.g.name(v));
    j["components"] = json::array();
    for (NodeId v = 0; v < l.g.node_count(); ++v)
      j["components"].push_back({{"node", l.g.name(v)}, {"index", art.component[v]}});
    out << j.dump(2) << "\n";
  } else {
    for (NodeId v : art.points) out << l.g.name(v) << "\n";
    for (NodeId v = 0; v < l.g.node_count(); ++v)
      out << "component " << l.g.name(v) << " " << component_tag(art.component[v]) << "\n";
  }
  return 0;
}

void print_plain_solution(const Graph& g, const CutDecomposition& dec,
                          std::span<const SafeInterval> intervals,
                          std::span<const NodeId> singletons, const RunConfig& cfg,
                          std::ostream& out) {
  if (cfg.json) {
    json j;
    j["bridges"] = json::array();
    for (EdgeId e : dec.bridges) j["bridges"].push_back(render_edge(g, e));
    j["intervals"] = intervals_json(intervals);
    j["singletons"] = json::array();
    for (NodeId v : singletons) j["singletons"].push_back(g.name(v));
    if (!cfg.compact_only) {
      j["walks"] = json::array();
      for (const Walk& w : expand_solution(g, dec, intervals, singletons))
        j["walks"].push_back(render_walk(g, w));
    }
    out << j.dump(2) << "\n";
    return;
  }
  for (const SafeInterval& iv : intervals) {
    out << "safe " << iv.lo << " " << iv.hi << " :";
    for (int i = iv.lo; i <= iv.hi; ++i) out << " " << render_edge(g, dec.bridges[i - 1]);
    out << "\n";
  }
  for (NodeId v : singletons) out << "singleton " << g.name(v) << "\n";
  if (!cfg.compact_only) {
    for (const Walk& w : expand_solution(g, dec, intervals, singletons))
      out << "walk " << render_walk(g, w) << "\n";
  }
}

int check_plain(const Graph& g, NodeId s, NodeId t, CandidateKind kind,
                std::span<const SafeInterval> intervals, std::span<const NodeId> singletons,
                std::ostream& err) {
  OracleSolution oracle = oracle_max_safe_edges(g, s, t, kind, guards_from_env());
  bool same = std::equal(intervals.begin(), intervals.end(), oracle.intervals.begin(),
                         oracle.intervals.end()) &&
              std::equal(singletons.begin(), singletons.end(), oracle.singletons.begin(),
                         oracle.singletons.end());
  if (!same) {
    err << "oracle disagreement: maximal safe solution\n";
    return 3;
  }
  return 0;
}

int run_safe(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const bool has_visibility = !cfg.visibility_path.empty();
  if (has_visibility && cfg.model != "walks") {
    if (cfg.model == "paths" || cfg.model == "trails") {
      err << "deciding safety for X-visible st" << (cfg.model == "paths" ? "Paths" : "Trails")
          << " is NP-hard; only --model walks supports --visibility "
             "(use the oracle subcommand for brute force at desk scale)\n";
    } else {
      err << "--visibility is only supported with --model walks\n";
    }
    return 2;
  }

  Loaded l = load_input(cfg);

  if (cfg.model == "paths" || cfg.model == "trails") {
    CutDecomposition dec = bridge_decomposition(l.g, l.s, l.t);
    Solution sol = cfg.model == "paths" ? max_safe_paths(l.g, dec) : max_safe_trails(l.g, dec);
    if (cfg.oracle_check) {
      int rc = check_plain(l.g, l.s, l.t,
                           cfg.model == "paths" ? CandidateKind::Paths : CandidateKind::Trails,
                           sol.intervals, sol.singletons, err);
      if (rc) return rc;
    }
    print_plain_solution(l.g, dec, sol.intervals, sol.singletons, cfg, out);
    return 0;
  }

  if (cfg.model == "walks" && !has_visibility) {
    CutDecomposition dec = bridge_decomposition(l.g, l.s, l.t);
    BreakerStaircase stairs = minimal_walk_breakers(l.g, dec);
    CompactSolution sol = compact_max_safe_walks(l.g, dec, stairs);
    if (cfg.oracle_check) {
      int rc = check_plain(l.g, l.s, l.t, CandidateKind::Walks, sol.intervals, sol.singletons, err);
      if (rc) return rc;
    }
    print_plain_solution(l.g, dec, sol.intervals, sol.singletons, cfg, out);
    return 0;
  }

  if (cfg.model == "walks") {
    VisibilitySet x = parse_visibility(read_file(cfg.visibility_path), l.g);
    VisibilityRestriction vr = restrict_visibility(l.g, l.s, l.t, x);
    CompactSolution sol = x_max_safe_walks(vr);
    if (cfg.oracle_check) {
      VisibilityMask mask{std::vector<bool>(vr.expanded.node_count(), false), vr.visible_edge};
      std::vector<EdgeId> oracle_seq;
      OracleSolution oracle = oracle_max_safe_x_walks(vr.expanded, vr.source, vr.target, mask,
                                                      &oracle_seq, guards_from_env());
      if (vr.merged.bridges != oracle_seq || sol.intervals != oracle.intervals) {
        err << "oracle disagreement: X-visible solution\n";
        return 3;
      }
    }
    if (cfg.json) {
      json j;
      j["bridges"] = json::array();
      for (EdgeId e : vr.merged.bridges)
        j["bridges"].push_back(render_expanded_edge(l.g, vr.expansion, e));
      j["intervals"] = intervals_json(sol.intervals);
      j["singletons"] = json::array();
      if (!cfg.compact_only) {
        j["walks"] = json::array();
        for (const SafeInterval& iv : sol.intervals) {
          std::string line;
          for (int i = iv.lo; i <= iv.hi; ++i) {
            if (i > iv.lo) line += " ";
            line += render_expanded_edge(l.g, vr.expansion, vr.merged.bridges[i - 1]);
          }
          j["walks"].push_back(line);
        }
      }
      out << j.dump(2) << "\n";
    } else {
      for (const SafeInterval& iv : sol.intervals) {
        out << "safe " << iv.lo << " " << iv.hi << " :";
        for (int i = iv.lo; i <= iv.hi; ++i)
          out << " " << render_expanded_edge(l.g, vr.expansion, vr.merged.bridges[i - 1]);
        out << "\n";
      }
      if (!cfg.compact_only) {
        for (const SafeInterval& iv : sol.intervals) {
          out << "walk";
          for (int i = iv.lo; i <= iv.hi; ++i)
            out << " " << render_expanded_edge(l.g, vr.expansion, vr.merged.bridges[i - 1]);
          out << "\n";
        }
      }
    }
    return 0;
  }

  if (cfg.model == "mtrails") {
    MultigraphTrailSolution sol = multigraph_trail_solution(l.g, l.s, l.t);
    if (cfg.oracle_check) {
      OracleMTrails oracle = oracle_max_safe_mtrails(l.g, l.s, l.t, guards_from_env());
      if (sol.node_sequences != oracle.node_sequences || sol.singletons != oracle.singletons) {
        err << "oracle disagreement: multigraph trail solution\n";
        return 3;
      }
    }
    if (cfg.json) {
      json j;
      j["sequences"] = json::array();
      for (const auto& seq : sol.node_sequences) {
        json names = json::array();
        for (NodeId v : seq) names.push_back(sol.merged.name(v));
        j["sequences"].push_back(names);
      }
      j["singletons"] = json::array();
      for (NodeId v : sol.singletons) j["singletons"].push_back(sol.merged.name(v));
      out << j.dump(2) << "\n";
    } else {
      for (const auto& seq : sol.node_sequences)
        out << render_node_sequence(sol.merged, seq) << "\n";
      for (NodeId v : sol.singletons) out << "singleton " << sol.merged.name(v) << "\n";
    }
    return 0;
  }

  err << "unknown model: " << cfg.model << "\n";
  return 1;
}

std::vector<Element> parse_query(const Graph& g, const std::string& text) {
  std::vector<Element> query;
  std::istringstream ss(text);
  std::string token;
  while (ss >> token) {
    if (token.front() == '(') {
      size_t comma = token.find(',');
      size_t close = token.find(')');
      if (comma == std::string::npos || close == std::string::npos || comma > close)
        throw Error("bad edge token in query: " + token);
      NodeId tail = g.require_node(token.substr(1, comma - 1));
      NodeId head = g.require_node(token.substr(comma + 1, close - comma - 1));
      int ordinal = 1;
      if (close + 1 < token.size()) {
        if (token[close + 1] != '#') throw Error("bad edge token in query: " + token);
        ordinal = std::atoi(token.c_str() + close + 2);
      }
      EdgeId found = -1;
      int rank = 0;
      for (EdgeId e : g.out_edges(tail))
        if (g.head(e) == head && ++rank == ordinal) {
          found = e;
          break;
        }
      if (found < 0) throw Error("no such edge in query: " + token);
      query.push_back(edge_element(found));
    } else {
      query.push_back(node_element(g.require_node(token)));
    }
  }
  if (query.empty()) throw Error("empty query");
  return query;
}

int run_oracle(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  Loaded l = load_input(cfg);
  CandidateModel model;
  if (cfg.model == "paths") model.kind = CandidateKind::Paths;
  else if (cfg.model == "trails") model.kind = CandidateKind::Trails;
  else if (cfg.model == "walks") model.kind = CandidateKind::Walks;
  else if (cfg.model == "mtrails") model.kind = CandidateKind::MultiTrails;
  else throw Error("unknown model: " + cfg.model);
  model.walk_bound = 2 * l.g.node_count();
  if (!cfg.visibility_path.empty())
    model.visibility =
        VisibilityMask::from_set(l.g, parse_visibility(read_file(cfg.visibility_path), l.g));

  OracleGuards guards = guards_from_env();
  std::uint64_t count = count_candidates(l.g, l.s, l.t, model, guards);

  json j;
  j["candidates"] = count;
  j["queries"] = json::array();
  if (!cfg.json) out << "candidates " << count << "\n";
  for (const std::string& q : cfg.queries) {
    bool safe = oracle_safe(l.g, l.s, l.t, model, parse_query(l.g, q), guards);
    if (cfg.json)
      j["queries"].push_back({{"query", q}, {"safe", safe}});
    else
      out << "query " << q << " : " << (safe ? "safe" : "unsafe") << "\n";
  }
  if (cfg.json) out << j.dump(2) << "\n";
  return 0;
}

int run_gen(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  auto kind = family_from_name(cfg.family);
  if (!kind) throw Error("unknown family: " + cfg.family);
  GeneratedInstance inst = generate({*kind, cfg.size, cfg.seed});

  std::ostringstream text;
  text << "# family " << cfg.family << " k=" << cfg.size << " seed=" << cfg.seed << "\n";
  text << "# source " << inst.graph.name(inst.s) << "\n";
  text << "# target " << inst.graph.name(inst.t) << "\n";
  for (EdgeId e = 0; e < inst.graph.edge_count(); ++e)
    text << inst.graph.name(inst.graph.tail(e)) << " " << inst.graph.name(inst.graph.head(e))
         << "\n";

  if (cfg.output_path.empty()) {
    out << text.str();
  } else {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw Error("cannot write file: " + cfg.output_path);
    f << text.str();
  }
  return 0;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    switch (cfg.command) {
      case RunConfig::Command::Bridges: return run_bridges(cfg, out, err);
      case RunConfig::Command::Articulation: return run_articulation(cfg, out, err);
      case RunConfig::Command::Safe: return run_safe(cfg, out, err);
      case RunConfig::Command::Oracle: return run_oracle(cfg, out, err);
      case RunConfig::Command::Gen: return run_gen(cfg, out, err);
    }
    err << "unknown command\n";
    return 1;
  } catch (const UnreachableError&) {
    err << "error: no s-t path\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace stsafe
