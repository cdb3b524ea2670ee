#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "ahp/error.hpp"
#include "ahp/service/session_manager.hpp"

namespace httplib {
class Server;
}

namespace ahp::service {

inline constexpr std::string_view kApiPrefix = "/api/v1";

/// HTTP status for an error code (400/404/409/422).
int http_status(ErrorCode code) noexcept;

/// Registers /healthz and every /api/v1 route on `server`. When
/// `static_dir` is set its files are served at `/`.
void mount_api(httplib::Server& server, SessionManager& sessions,
               const std::optional<std::filesystem::path>& static_dir = std::nullopt);

}  // namespace ahp::service
