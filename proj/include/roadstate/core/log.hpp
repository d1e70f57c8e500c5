#pragma once

#include <cstdarg>

namespace roadstate::log {

enum class Level { error = 0, info = 1, debug = 2 };

/// Current level, read once from ROADSTATE_LOG ({error,info,debug}, default
/// info).
Level level();

void error(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void info(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void debug(const char* fmt, ...) __attribute__((format(printf, 1, 2)));

}  // namespace roadstate::log
