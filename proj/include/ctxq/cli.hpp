#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ctxq::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitResourceCap = 4;

inline constexpr unsigned long long kDefaultSeed = 42;

/// Runs one command line (args excludes the program name). The result
/// document goes to `out`, diagnostics and usage text to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// A JSON result document with its duration field removed, re-serialized.
/// Used to compare runs for reproducibility.
std::string payload_fingerprint(const std::string& document);

} // namespace ctxq::cli
