#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace varcap::cli {

// Runs one CLI invocation. args excludes the program name. Returns the
// process exit code: 0 success, 1 input/validation error, 2 internal error.
// All diagnostics go to err as a single line; summaries go to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace varcap::cli
