#include "roadstate/core/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace roadstate::log {

Level level() {
  static const Level lvl = [] {
    const char* env = std::getenv("ROADSTATE_LOG");
    if (env == nullptr) return Level::info;
    if (std::strcmp(env, "error") == 0) return Level::error;
    if (std::strcmp(env, "debug") == 0) return Level::debug;
    return Level::info;
  }();
  return lvl;
}

namespace {
void vemit(const char* tag, const char* fmt, va_list args) {
  std::fprintf(stderr, "[%s] ", tag);
  std::vfprintf(stderr, fmt, args);
  std::fputc('\n', stderr);
}
}  // namespace

void error(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  vemit("error", fmt, args);
  va_end(args);
}

void info(const char* fmt, ...) {
  if (level() < Level::info) return;
  va_list args;
  va_start(args, fmt);
  vemit("info", fmt, args);
  va_end(args);
}

void debug(const char* fmt, ...) {
  if (level() < Level::debug) return;
  va_list args;
  va_start(args, fmt);
  vemit("debug", fmt, args);
  va_end(args);
}

}  // namespace roadstate::log
