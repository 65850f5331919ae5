#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mgs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Entry point shared by the `mgs` binary and the tests. args[0] is the
// program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace mgs::cli
