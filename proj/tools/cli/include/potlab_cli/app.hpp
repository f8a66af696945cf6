#pragma once

namespace potlab::cli {

inline constexpr int kExitConfigError = 64;
inline constexpr int kExitInternalError = 70;

/// Entry point of the `potlab` tool. Returns 0 when the suite passes, the
/// number of failed suites for `report`, 1 for a failed single suite and
/// 64 for configuration errors.
int run_cli(int argc, char** argv);

}  // namespace potlab::cli
