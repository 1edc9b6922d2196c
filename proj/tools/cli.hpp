#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace blanketlab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNegative = 1;  // an --assert-* flag saw a negative verdict
inline constexpr int kUsage = 2;     // usage, parse or input errors

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace blanketlab::cli
