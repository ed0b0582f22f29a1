#pragma once

namespace fscheme::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitInfeasible = 3;

/// Entry point of the fscheme tool. Returns the process exit code.
int run(int argc, char** argv);

}  // namespace fscheme::cli
