#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stirling::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // accuracy failure, or a verification check failed
inline constexpr int kExitUsage = 2;    // bad flags or arguments outside the domain
inline constexpr int kExitInconclusive = 3;

/// Entry point behind the `stirling` executable; args exclude the program name.
/// Data goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stirling::cli
