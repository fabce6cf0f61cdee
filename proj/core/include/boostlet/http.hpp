#pragma once

#include <cstdint>
#include <span>
#include <stop_token>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "boostlet/manifest.hpp"

namespace boostlet {

struct Url {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string target;  // path plus query, always starting with '/'
};

/// Accepts absolute http:// and https:// URLs only; anything else is an
/// Errc::validation error.
Url parse_url(std::string_view text);

using HttpHeaders = std::vector<std::pair<std::string, std::string>>;

struct HttpExchange {
  std::string url;
  std::vector<std::uint8_t> request_body;
  std::string request_content_type;
  int status = 0;
  std::vector<std::uint8_t> response_body;
  std::string response_content_type;
  Seconds timeout{};
  Seconds elapsed{};
};

/// Blocking POST bounded by `timeout` (connect, send, and receive each, and
/// the whole exchange). Errors: Errc::validation for a bad URL or timeout
/// (no network traffic), Errc::timeout, Errc::transport, Errc::cancelled
/// when `stop` fires, RemoteError for any non-2xx status.
HttpExchange send_http_post(std::string_view url, std::span<const std::uint8_t> body,
                            std::string_view content_type, Seconds timeout,
                            const HttpHeaders& headers = {}, std::stop_token stop = {});

/// 30 s unless BOOSTLET_HTTP_TIMEOUT holds a positive number of seconds.
Seconds default_http_timeout();

}  // namespace boostlet
