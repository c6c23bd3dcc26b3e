#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace vmedad::cli {

/// Runs the command line; args[0] is the program name. Returns the exit
/// code: 0 on success, 1 on a runtime failure (one-line diagnostic on err),
/// 2 on a usage error (usage text on err).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Value rounded to 4 significant digits, as used in every printed table.
std::string fmt4(double v);

}  // namespace vmedad::cli
