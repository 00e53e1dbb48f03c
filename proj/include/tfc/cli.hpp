#pragma once

#include <iosfwd>

namespace tfc::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kRuntimeFailure = 1, kUsageError = 2 };

/// Entry point behind the `tfc` executable: `forecast`, `bench`, `synth`
/// and `report`. Diagnostics go to `err`; output written to "-" goes to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace tfc::cli
