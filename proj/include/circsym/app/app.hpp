#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circsym::app {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitNumeric = 3,
};

/// Entry point of the command-line tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.0123" style rendering; a p-value with no exceedances is shown as
/// "< 1/(B+1)" since that is the resolution of the Monte Carlo p-value.
std::string format_p_value(double p_value, std::size_t exceed_count, std::size_t b);

}  // namespace circsym::app
