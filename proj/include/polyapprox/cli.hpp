#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyapprox {

/// The command line tool. args excludes the program name. Results go to
/// `out` as JSON (or SVG with --format svg); errors go to `err`.
/// Returns 0 on success and 1 on any error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyapprox
