#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace arrangekit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitResource = 3;

// Runs the command line `args` (without the program name). Results go to
// `out` (or the --out file), diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace arrangekit::cli
