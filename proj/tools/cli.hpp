#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace nomlang::cli {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kBudget = 3 };

/// Runs one `nomlang` invocation; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nomlang::cli
