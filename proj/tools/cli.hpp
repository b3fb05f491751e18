#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace weylforge::cli {

/// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kBudget = 2;
inline constexpr int kInternal = 3;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace weylforge::cli
