#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qnerve::cli {

/// Runs one command line (without the program name). Returns 0 on success,
/// 2 on input errors, 3 when the tuple budget is exceeded, 1 otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qnerve::cli
