#pragma once

#include <string_view>

namespace soliton {

enum class LogLevel { kError = 0, kInfo = 1, kDebug = 2 };

/// Level parsed once from SOLITON_LOG (error|info|debug); defaults to error.
LogLevel log_level();

void log_error(std::string_view msg);
void log_info(std::string_view msg);
void log_debug(std::string_view msg);

}  // namespace soliton
