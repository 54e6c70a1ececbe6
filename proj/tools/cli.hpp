#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace covrad::cli {

// Exit codes.  Argument-parsing failures use CLI11's own nonzero codes.
constexpr int kOk = 0;
constexpr int kInputError = 2;   // bad inputs, alphabets, graphs, files
constexpr int kInfeasible = 3;   // bound LP has no feasible point
constexpr int kCapExceeded = 4;  // enumeration / construction size caps
constexpr int kNumeric = 5;      // instability or convergence failures

// Parses and runs one command line (without the program name).  Writes
// results to `out` and diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covrad::cli
