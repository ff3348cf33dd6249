#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sdom::cli {

/// Exit codes. Verdict-bearing commands return kOk for In / consistent /
/// majorized and kNegative for Out / violation / not majorized.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNegative = 2,
  kInconclusive = 3,
};

/// Runs one command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdom::cli
