#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain or I/O error
// (message on stderr), 2 usage error.

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ntdice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Directory holding cached enumeration stats (stats-n<N>.json).
inline constexpr const char* kCacheDirEnv = "NTDICE_CACHE_DIR";

struct CommandInfo {
  std::string_view name;
  /// Library operation the command runs.
  std::string_view operation;
  /// Further library operations the command exercises on the way.
  std::vector<std::string_view> also;
};

std::span<const CommandInfo> command_table();

/// args excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ntdice::cli
