#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwalk::cli {

/// Stable process exit codes.
enum ExitCode : int {
  kOk = 0,
  kUsage = 2,          // configuration / parse failure
  kNumeric = 3,        // NonConvergedQuadrature, DivergentScale
  kDivergent = 4,      // DivergentIntegral (order >= 2 in `limit`)
};

/// Output paths that are relative are resolved against this directory when
/// the variable is set.
inline constexpr const char* kOutputDirEnv = "QWALK_OUTPUT_DIR";

/// Entry point shared by the executable and the tests; args excludes argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwalk::cli
