#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latpack/io.hpp"
#include "latpack/search.hpp"

namespace latpack {

/// Settings of one `solve` run. Exactly one of solid and input is set.
struct RunConfig {
  std::string solid;
  std::string input;
  std::vector<SearchCase> cases{kAllCases.begin(), kAllCases.end()};
  int threads = 0;            // 0: available parallelism, 1: serial reference path
  std::string output;         // JSON report path; empty writes to the output stream
  std::string emit_packing;   // OFF path for the packing; empty disables it
  int shells = 1;             // lattice coefficients |m_i| ≤ shells
  bool exhaustive_exclusions = false;
  bool verify_exact = false;
  bool verbose = false;
};

/// Runs the search and writes the JSON report. Returns 0 on success, 2 on
/// input errors and 1 when no lattice was found.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Command-line entry point: `solve` and `list` subcommands.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// P translated by W·m for every integer m with max |m_i| ≤ shells.
OffMesh packing_mesh(const Polytope& p, const Mat3& basis, int shells);

}  // namespace latpack
