#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nugap {

// Runs the command-line front end against explicit streams so tests can
// capture output byte-for-byte. Returns the process exit code:
//   0 success, 2 input/parse error, 3 numeric or certification failure,
//   4 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace nugap
