#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace telegraph::cli {

// Parses `lo:hi:step` into an ascending grid. Both endpoints are included
// when (hi - lo) / step is integral within 1e-9; otherwise the grid stops at
// the last point not beyond hi. Throws ValidationError on malformed input.
std::vector<double> parse_grid(const std::string& spec);

// Runs one CLI invocation. Returns 0 on success, 1 on validation/usage
// errors, 2 on numerical failures. Primary output goes to `out` unless
// --out-dir routes it to files (plus a manifest); diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace telegraph::cli
