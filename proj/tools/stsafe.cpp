#include <iostream>

#include "CLI11.hpp"
#include "stsafe/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"s-t bridges, articulation points and maximal safe walks"};
  app.require_subcommand(1);

  stsafe::RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_st) {
    sub->add_option("input", cfg.input_path, "edge-list file")->required();
    if (needs_st) {
      sub->add_option("-s,--source", cfg.source, "source node token")->required();
      sub->add_option("-t,--target", cfg.target, "target node token")->required();
    }
    sub->add_flag("--json", cfg.json, "JSON output");
    sub->add_flag("--oracle-check", cfg.oracle_check,
                  "verify the result against the brute-force oracle (small inputs)");
  };

  CLI::App* bridges = app.add_subcommand("bridges", "ordered s-t bridges with components");
  add_common(bridges, true);

  CLI::App* articulation =
      app.add_subcommand("articulation", "ordered s-t articulation points with components");
  add_common(articulation, true);

  CLI::App* safe = app.add_subcommand("safe", "maximal safe walks for the chosen model");
  add_common(safe, true);
  safe->add_option("--model", cfg.model, "paths | trails | walks | mtrails")
      ->default_val("walks");
  safe->add_option("--visibility", cfg.visibility_path, "visibility file (walks only)");
  safe->add_flag("--compact", cfg.compact_only, "print the compact representation only");

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force candidate counts and verdicts");
  add_common(oracle, true);
  oracle->add_option("--model", cfg.model, "paths | trails | walks | mtrails")
      ->default_val("walks");
  oracle->add_option("--visibility", cfg.visibility_path, "visibility file");
  oracle->add_option("--query", cfg.queries,
                     "element sequence, e.g. \"(s,a) (a,t)\" or \"s a t\"; repeatable");

  CLI::App* gen = app.add_subcommand("gen", "write a benchmark family as an edge list");
  gen->add_option("--family", cfg.family,
                  "chain | junction-cycles | quadratic-breakers | quadratic-solution | "
                  "random-digraph | random-multigraph")
      ->required();
  gen->add_option("--size", cfg.size, "family size parameter k")->required();
  gen->add_option("--seed", cfg.seed, "seed for the random families");
  gen->add_option("-o,--output", cfg.output_path, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (bridges->parsed()) cfg.command = stsafe::RunConfig::Command::Bridges;
  if (articulation->parsed()) cfg.command = stsafe::RunConfig::Command::Articulation;
  if (safe->parsed()) cfg.command = stsafe::RunConfig::Command::Safe;
  if (oracle->parsed()) cfg.command = stsafe::RunConfig::Command::Oracle;
  if (gen->parsed()) cfg.command = stsafe::RunConfig::Command::Gen;

  return stsafe::run(cfg, std::cout, std::cerr);
}
