#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphmetro::cli {

/// Runs the command line `args` (program name excluded) and returns the process exit
/// code: 0 success, 2 validation, 3 singular QFIM, 4 I/O, 5 optimisation failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace graphmetro::cli
