#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "stsafe/cli.hpp"

using namespace stsafe;
namespace fs = std::filesystem;

namespace {

struct TempFile {
  fs::path path;
  TempFile(const std::string& name, const std::string& content)
      : path(fs::temp_directory_path() / ("stsafe_test_" + name)) {
    std::ofstream f(path, std::ios::binary);
    f << content;
  }
  ~TempFile() { fs::remove(path); }
};

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(RunConfig cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig safe_config(const std::string& input, const std::string& model) {
  RunConfig cfg;
  cfg.command = RunConfig::Command::Safe;
  cfg.input_path = input;
  cfg.source = "s";
  cfg.target = "t";
  cfg.model = model;
  return cfg;
}

}  // namespace

TEST_CASE("safe on a chain prints the interval with its edges") {
  TempFile chain("chain.txt", "s a\na t\n");
  Result r = run_cli(safe_config(chain.path.string(), "walks"));
  CHECK(r.code == 0);
  CHECK(r.out == "safe 1 2 : (s,a) (a,t)\nwalk s (s,a) a (a,t) t\n");

  RunConfig compact = safe_config(chain.path.string(), "walks");
  compact.compact_only = true;
  CHECK(run_cli(compact).out == "safe 1 2 : (s,a) (a,t)\n");
}

TEST_CASE("visibility with paths or trails is rejected as NP-hard") {
  TempFile chain("chain2.txt", "s a\na t\n");
  TempFile vis("vis.txt", "edge s a\n");
  for (std::string model : {"paths", "trails"}) {
    RunConfig cfg = safe_config(chain.path.string(), model);
    cfg.visibility_path = vis.path.string();
    Result r = run_cli(cfg);
    CHECK(r.code == 2);
    CHECK(r.err.find("NP-hard") != std::string::npos);
  }
  RunConfig cfg = safe_config(chain.path.string(), "mtrails");
  cfg.visibility_path = vis.path.string();
  CHECK(run_cli(cfg).code == 2);
}

TEST_CASE("mtrails prints node sequences") {
  TempFile multi("multi.txt", "s a\na b\na b\nb t\nb a\n");
  Result r = run_cli(safe_config(multi.path.string(), "mtrails"));
  CHECK(r.code == 0);
  CHECK(r.out == "(s,a,b)\n(a,b,t)\n");
}

TEST_CASE("x-visible walks render internal edges as nodes") {
  TempFile g("xg.txt", "s a\na b\nb t\nb a\n");
  TempFile vis("xvis.txt", "edge s a\nedge b t\n");
  RunConfig cfg = safe_config(g.path.string(), "walks");
  cfg.visibility_path = vis.path.string();
  cfg.compact_only = true;
  Result r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out == "safe 1 2 : (s,a) (b,t)\n");

  TempFile nodevis("nodevis.txt", "node a\n");
  TempFile chain("xchain.txt", "s a\na t\n");
  RunConfig cfg2 = safe_config(chain.path.string(), "walks");
  cfg2.visibility_path = nodevis.path.string();
  cfg2.compact_only = true;
  CHECK(run_cli(cfg2).out == "safe 1 1 : a\n");
}

TEST_CASE("bridges and articulation output") {
  TempFile g("bg.txt", "s a\na t\na c\nc a\nx y\n");
  RunConfig cfg;
  cfg.command = RunConfig::Command::Bridges;
  cfg.input_path = g.path.string();
  cfg.source = "s";
  cfg.target = "t";
  Result r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "(s,a)\n(a,t)\n"
        "component s 1\ncomponent a 2\ncomponent t 3\ncomponent c 2\n"
        "component x unreachable\ncomponent y unreachable\n");

  cfg.command = RunConfig::Command::Articulation;
  Result r2 = run_cli(cfg);
  CHECK(r2.code == 0);
  CHECK(r2.out.substr(0, 6) == "s\na\nt\n");

  cfg.command = RunConfig::Command::Bridges;
  cfg.json = true;
  auto j = nlohmann::json::parse(run_cli(cfg).out);
  CHECK(j["bridges"] == nlohmann::json::array({"(s,a)", "(a,t)"}));
  CHECK(j["components"][0]["node"] == "s");
  CHECK(j["components"][0]["index"] == 1);
  CHECK(j["components"][4]["index"] == 0);  // unreachable region
}

TEST_CASE("errors exit with code 1") {
  TempFile g("err.txt", "t s\n");
  RunConfig cfg;
  cfg.command = RunConfig::Command::Bridges;
  cfg.input_path = g.path.string();
  cfg.source = "s";
  cfg.target = "t";
  Result r = run_cli(cfg);
  CHECK(r.code == 1);
  CHECK(r.err == "error: no s-t path\n");

  TempFile bad("bad.txt", "a b\nc\n");
  cfg.input_path = bad.path.string();
  Result r2 = run_cli(cfg);
  CHECK(r2.code == 1);
  CHECK(r2.err.find("line 2") != std::string::npos);

  cfg.input_path = "/nonexistent/file.txt";
  CHECK(run_cli(cfg).code == 1);
}

TEST_CASE("json and text modes carry the same data") {
  TempFile g("jg.txt", "s a\na b\nb t\nb a\n");
  RunConfig cfg = safe_config(g.path.string(), "walks");
  Result text = run_cli(cfg);
  cfg.json = true;
  Result js = run_cli(cfg);
  CHECK(js.code == 0);

  auto j = nlohmann::json::parse(js.out);
  std::ostringstream rebuilt;
  for (size_t i = 0; i < j["intervals"].size(); ++i) {
    int lo = j["intervals"][i][0], hi = j["intervals"][i][1];
    rebuilt << "safe " << lo << " " << hi << " :";
    for (int k = lo; k <= hi; ++k) rebuilt << " " << j["bridges"][k - 1].get<std::string>();
    rebuilt << "\n";
  }
  for (const auto& s : j["singletons"]) rebuilt << "singleton " << s.get<std::string>() << "\n";
  for (const auto& w : j["walks"]) rebuilt << "walk " << w.get<std::string>() << "\n";
  CHECK(rebuilt.str() == text.out);
}

TEST_CASE("output is byte-identical across runs") {
  TempFile g("det.txt", "s a\na b\nb t\nb a\ns b\n");
  RunConfig cfg = safe_config(g.path.string(), "walks");
  Result first = run_cli(cfg);
  Result second = run_cli(cfg);
  CHECK(first.out == second.out);
}

TEST_CASE("gen writes a parseable instance that round-trips") {
  fs::path out = fs::temp_directory_path() / "stsafe_test_gen.txt";
  RunConfig cfg;
  cfg.command = RunConfig::Command::Gen;
  cfg.family = "junction-cycles";
  cfg.size = 3;
  cfg.output_path = out.string();
  CHECK(run_cli(cfg).code == 0);

  RunConfig use;
  use.command = RunConfig::Command::Bridges;
  use.input_path = out.string();
  use.source = "s";
  use.target = "t";
  Result r = run_cli(use);
  CHECK(r.code == 0);
  CHECK(r.out.find("(s,u1)") != std::string::npos);
  fs::remove(out);

  RunConfig bad;
  bad.command = RunConfig::Command::Gen;
  bad.family = "no-such-family";
  bad.size = 3;
  CHECK(run_cli(bad).code == 1);
}

TEST_CASE("oracle subcommand prints counts and verdicts") {
  TempFile g("og.txt", "s a\na t\na c\nc a\n");
  RunConfig cfg;
  cfg.command = RunConfig::Command::Oracle;
  cfg.input_path = g.path.string();
  cfg.source = "s";
  cfg.target = "t";
  cfg.model = "trails";
  cfg.queries = {"(s,a) (a,t)", "(s,a)"};
  Result r = run_cli(cfg);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "candidates 2\n"
        "query (s,a) (a,t) : unsafe\n"
        "query (s,a) : safe\n");
}

TEST_CASE("STSAFE_ORACLE_LIMIT raises the oracle guards") {
  // 13 edges: beyond the default walk guard of 12
  std::string text;
  for (int i = 0; i < 12; ++i)
    text += "m" + std::to_string(i) + " m" + std::to_string(i + 1) + "\n";
  text += "m0 m13\nm13 m12\n";
  TempFile g("guard.txt", text);
  RunConfig cfg;
  cfg.command = RunConfig::Command::Oracle;
  cfg.input_path = g.path.string();
  cfg.source = "m0";
  cfg.target = "m12";
  cfg.model = "walks";

  unsetenv("STSAFE_ORACLE_LIMIT");
  Result blocked = run_cli(cfg);
  CHECK(blocked.code == 1);
  CHECK(blocked.err.find("exceeds") != std::string::npos);

  setenv("STSAFE_ORACLE_LIMIT", "40", 1);
  Result allowed = run_cli(cfg);
  CHECK(allowed.code == 0);
  CHECK(allowed.out.find("candidates") == 0);
  unsetenv("STSAFE_ORACLE_LIMIT");
}

TEST_CASE("oracle-check agrees on small inputs") {
  TempFile g("ocg.txt", "s a\na b\nb t\nb a\n");
  for (std::string model : {"paths", "trails", "walks", "mtrails"}) {
    RunConfig cfg = safe_config(g.path.string(), model);
    cfg.oracle_check = true;
    Result r = run_cli(cfg);
    CHECK(r.code == 0);
  }
  RunConfig cfg;
  cfg.command = RunConfig::Command::Bridges;
  cfg.input_path = g.path.string();
  cfg.source = "s";
  cfg.target = "t";
  cfg.oracle_check = true;
  CHECK(run_cli(cfg).code == 0);
}
