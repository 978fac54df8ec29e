#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weylq {

// Runs one command-line invocation. Exit status: 0 for success or a passing
// verdict, 1 when the mathematics says no (bracket-condition violations,
// infeasible systems, non-membership, domain errors), 2 for usage or parse
// errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylq
