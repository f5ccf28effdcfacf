#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orbitrep {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitMalformed = 2;

/// Runs one command line. args[0] is the program name. Reports go to `out`,
/// diagnostics to `err`; user errors never escape as exceptions.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orbitrep
