#pragma once

// Command-line front end: argument parsing, config merging, report output and exit codes.

#include <ostream>
#include <string>
#include <vector>

namespace dfforge::cli {

/// Exit codes: 0 success, 1 usage or runtime error, 2 a check failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitCheckFailed = 2;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace dfforge::cli
