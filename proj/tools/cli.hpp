#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lipprint::cli {

/// Runs one `lipprint` invocation. args[0] is the program name. Results go to
/// out, diagnostics to err. Exit codes: 0 success / accept, 1 reject, 2 error.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace lipprint::cli
