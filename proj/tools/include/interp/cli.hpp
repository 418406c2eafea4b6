#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace interp::cli {

/// Runs one command. argv[0] is the program name. Returns 0 on success, 2 on
/// a validation error, 1 on a runtime failure; diagnostics go to `err` as a
/// single line prefixed with the failing module.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace interp::cli
