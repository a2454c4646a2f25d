#include "infoscale/logging.hpp"

#include <cstdlib>
#include <string>

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

namespace infoscale {

std::shared_ptr<spdlog::logger> logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto sink = std::make_shared<spdlog::sinks::stderr_sink_mt>();
    auto log = std::make_shared<spdlog::logger>("infoscale", sink);
    log->set_pattern("[%l] %v");
    spdlog::level::level_enum level = spdlog::level::warn;
    if (const char* env = std::getenv("INFOSCALE_LOG")) {
      const std::string name(env);
      if (!name.empty()) level = spdlog::level::from_str(name);
      // from_str maps unknown names to off; keep warnings visible instead.
      if (level == spdlog::level::off && name != "off") level = spdlog::level::warn;
    }
    log->set_level(level);
    return log;
  }();
  return instance;
}

}  // namespace infoscale
