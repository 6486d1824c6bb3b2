#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace amorse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`. Returns 0 on success, 1 when the input fails
/// validation (or two computations disagree), 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace amorse::cli
