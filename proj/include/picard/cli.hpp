#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace picard::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// Parses "1048576", "2^20" or "1e6" into an integer; throws std::invalid_argument.
std::uint64_t parse_bound(const std::string& text);

/// Entry point of the `picard` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace picard::cli
