#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qgcl::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFalse = 1;  // a verdict came out negative
inline constexpr int kExitInput = 2;  // unreadable, malformed or ill-formed input

// Runs one invocation.  `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace qgcl::cli
