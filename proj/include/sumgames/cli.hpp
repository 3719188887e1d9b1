#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sumgames::cli {

/// Dispatches one invocation. Exit codes: 0 = true/Ok/verified,
/// 1 = false/counterexample/finding, 2 = usage or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sumgames::cli
