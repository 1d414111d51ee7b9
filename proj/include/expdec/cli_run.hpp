#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace expdec {

// One parsed invocation; run_command dispatches and writes the report.
// Identical configs produce byte-identical output.
struct RunConfig {
  std::string command;  // decompose | trim | cutmatch | prune | verify | generate
  std::string phi_text = "1/10";
  uint64_t seed = 1;
  double c_round_budget = 16.0;
  int64_t c_phi_guard = 1;
  double c_charge = 32.0;
  double c_balance = 1.0;
  int threads = 1;
  bool tsv = false;
  bool debug_validate = false;
  bool psi_trace = false;  // cutmatch dense test mode

  std::string input_path;      // graph edge list ("-" = stdin)
  std::string nodeset_path;    // trim / verify nearly
  std::string deletions_path;  // prune
  std::string sources_path;    // verify feasible
  std::string verify_kind;     // phi | nearly | feasible
  std::string family;          // generate
  std::vector<int64_t> family_params;
  std::string output_path;  // empty = stdout
};

// Returns the process exit code: 0 success, 2 parameter/input error,
// 3 internal invariant failure.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Convenience for determinism checks: captured stdout of run_command.
std::string run_to_string(const RunConfig& cfg);

}  // namespace expdec
