#pragma once

// Command-line dispatch. Exit codes: 2 on usage errors, 1 on a failed check,
// failed suite or rejected input, 0 otherwise (an UNSAT verdict is a success).

#include <iosfwd>
#include <string>
#include <vector>

namespace coarsedim {

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace coarsedim
