#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mamass::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSchema = "mamass-report/1";
inline constexpr const char* kToolVersion = "1.0.0";

// Runs one command line (without the program name). Reports go to the paths
// named by --json/--csv/--svg; the JSON report is written to `out` when no
// --json path is given. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mamass::cli
