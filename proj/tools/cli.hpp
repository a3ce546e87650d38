#pragma once

#include <iosfwd>

namespace ntnvec::cli {

enum ExitCode : int
{
  kOk = 0,
  kValidationError = 1,
  kSolverFailure = 2,
  kIoError = 3,
};

/// Environment variable consulted when --config is not given.
inline constexpr const char* kConfigEnv = "NTNVEC_CONFIG";

/// Entry point behind the `ntnvec` executable, with injectable streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ntnvec::cli
