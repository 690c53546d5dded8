#pragma once

#include <iosfwd>

namespace crowdsel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartialFailure = 1;  // benchmark: some entries failed
inline constexpr int kExitDatasetError = 2;
inline constexpr int kExitUsageError = 3;

// Full command-line front end. Reports go to `out` (or --output files),
// progress and diagnostics to `err`. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace crowdsel::cli
