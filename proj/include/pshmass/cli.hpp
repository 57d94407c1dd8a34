#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pshmass {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitInternal = 2;

/// Parses `args` (without the program name) and runs one subcommand. Results go
/// to `out`, diagnostics to `err`. Returns 0 on success, 1 for rejected input
/// and 2 when two evaluation routes disagree or an internal error occurs.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pshmass
