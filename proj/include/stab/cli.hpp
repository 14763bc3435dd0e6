#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stab {

/// Command-line entry point, separated from main() for testing.
/// `args` excludes the program name. Exit codes: 0 ok, 1 usage, 2 circuit
/// parse error, 3 infeasible (contradictory post-selection), 4 oracle
/// verification mismatch.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stab
