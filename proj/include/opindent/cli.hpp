// Command-line front end, callable in-process for tests.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace opindent {

enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitIo = 2,
    kExitLangDef = 3,
    kExitGrammar = 4,
    kExitFuse = 5,
};

/// Navigation and indentation read at most this many tokens per navigation
/// call when driven from the command line.
inline constexpr std::size_t kCliTokenFuse = 10'000'000;

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Unified diff with three lines of context between two texts with the same
/// number of lines.  Empty when they are equal.
std::string unified_line_diff(const std::string& before, const std::string& after, const std::string& label);

} // namespace opindent
