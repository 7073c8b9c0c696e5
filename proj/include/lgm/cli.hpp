#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lgm::cli {

// Runs one CLI invocation; `args` excludes the program name. Returns the
// process exit code: 0 ok, 1 input error, 2 unsupported, 3 verification
// failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lgm::cli
