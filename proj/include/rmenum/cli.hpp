#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace rmenum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResourceCap = 3;
inline constexpr int kExitUnconverged = 4;
inline constexpr int kExitReplayMismatch = 5;

const char* tool_version();

/// Parses "lo:hi" or "lo:hi:step" (inclusive).
std::vector<std::size_t> parse_range(const std::string& text);

/// Runs the rmenum command line. args excludes the program name. Outputs
/// without --out go to `out`; diagnostics and stdout manifests go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// As run, but nothing is written anywhere: every output is captured by path
/// ("-" for stdout). Used by replay.
int run_captured(const std::vector<std::string>& args, std::map<std::string, std::string>& outputs,
                 std::ostream& err);

}  // namespace rmenum::cli
