#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace unruh::cli {

enum ExitCode { kOk = 0, kUsage = 1, kDomain = 2, kVerifyFailed = 3, kIo = 4 };

inline constexpr const char* kVersion = "0.1.0";

// Runs one command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 17 significant digits.
std::string format_double(double x);

}  // namespace unruh::cli
