#include "soliton/log.hpp"

#include <cstdlib>
#include <iostream>
#include <string>

namespace soliton {

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("SOLITON_LOG");
    if (env == nullptr) return LogLevel::kError;
    const std::string v(env);
    if (v == "debug") return LogLevel::kDebug;
    if (v == "info") return LogLevel::kInfo;
    return LogLevel::kError;
  }();
  return level;
}

namespace {

void emit(LogLevel at, const char* tag, std::string_view msg) {
  if (log_level() >= at) std::cerr << "[soliton:" << tag << "] " << msg << '\n';
}

}  // namespace

void log_error(std::string_view msg) { emit(LogLevel::kError, "error", msg); }
void log_info(std::string_view msg) { emit(LogLevel::kInfo, "info", msg); }
void log_debug(std::string_view msg) { emit(LogLevel::kDebug, "debug", msg); }

}  // namespace soliton
