#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace camforge::cli {

/// Process exit codes.
enum ExitCode : int {
  kSuccess = 0,
  kVerifyFailed = 1,
  kUsageError = 2,
  kModelError = 3,
};

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace camforge::cli
