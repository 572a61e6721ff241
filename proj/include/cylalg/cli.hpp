#pragma once

// Command-line surface. Exit status 0 on success, 1 when a verification or
// audit fails, 2 for usage and parse errors.

#include <iosfwd>
#include <string>
#include <vector>

namespace cylalg::cli {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cylalg::cli
