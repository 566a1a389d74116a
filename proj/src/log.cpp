#include "rfs/log.hpp"

#include <cstdlib>
#include <iostream>

namespace rfs {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("RFS_LOG");
    if (!env) return LogLevel::Warn;
    const std::string s(env);
    if (s == "error") return LogLevel::Error;
    if (s == "warn") return LogLevel::Warn;
    if (s == "info") return LogLevel::Info;
    if (s == "debug") return LogLevel::Debug;
    return LogLevel::Warn;
  }();
  return level;
}

void log_message(LogLevel level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::cerr << "[rfs:" << names[static_cast<int>(level)] << "] " << msg << "\n";
}

}  // namespace rfs
