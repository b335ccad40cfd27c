#pragma once

#include <string>
#include <vector>

namespace chocoq {

/// Command-line front end. `args` excludes the program name. Exit codes:
/// 0 success, 2 configuration error, 3 solver error. Library entry point so
/// tests can drive full command invocations in process.
int run_cli(const std::vector<std::string>& args);

} // namespace chocoq
