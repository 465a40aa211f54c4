#include "gcpv/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace gcpv {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("GCPV_LOG");
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

void log_message(LogLevel level, const std::string& message) {
  if (level > log_level()) return;
  static std::mutex mu;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[gcpv:" << names[static_cast<int>(level)] << "] " << message << '\n';
}

}  // namespace gcpv
