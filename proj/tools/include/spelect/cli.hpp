#pragma once

#include <ostream>

namespace spelect {

// Runs one CLI invocation. Returns the process exit code: 0 when a decision
// (or document) was produced, 1 for invalid input, 2 when a resource cap hit.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spelect
