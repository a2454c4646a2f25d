#pragma once

#include <memory>

#include <spdlog/logger.h>

namespace infoscale {

/// Shared diagnostics logger writing to stderr. The level comes from
/// INFOSCALE_LOG (debug, info, warn, error, off) and defaults to warn.
std::shared_ptr<spdlog::logger> logger();

}  // namespace infoscale
