#pragma once

#include <sstream>
#include <string>

namespace rfs {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Current threshold, read once from the RFS_LOG environment variable
/// (error | warn | info | debug; default warn).
LogLevel log_level();

void log_message(LogLevel level, const std::string& msg);

template <typename... Args>
void log(LogLevel level, Args&&... args) {
  if (level > log_level()) return;
  std::ostringstream os;
  (os << ... << args);
  log_message(level, os.str());
}

}  // namespace rfs
