#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stsafe/graph.hpp"

namespace stsafe {

// Exit codes: 0 success, 1 input error (including unreachable t), 2 rejected
// model/visibility combination, 3 oracle disagreement under --oracle-check.
struct RunConfig {
  enum class Command { Bridges, Articulation, Safe, Oracle, Gen };
  Command command = Command::Safe;

  std::string input_path;
  std::string source, target;           // node tokens
  std::string model = "walks";          // paths | trails | walks | mtrails
  std::string visibility_path;          // empty: full visibility
  bool compact_only = false;
  bool json = false;
  bool oracle_check = false;

  std::string family;                   // gen
  int size = 0;                         // gen
  std::uint64_t seed = 0;               // gen
  std::string output_path;              // gen; empty writes to stdout

  std::vector<std::string> queries;     // oracle
};

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace stsafe
