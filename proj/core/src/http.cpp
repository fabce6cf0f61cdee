#include "boostlet/http.hpp"

#include <httplib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>

#include "boostlet/error.hpp"

namespace boostlet {
namespace {

bool valid_host(std::string_view host) {
  if (host.empty()) return false;
  return std::all_of(host.begin(), host.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '.' || c == '-' || c == '_';
  });
}

std::pair<time_t, time_t> to_sec_usec(Seconds timeout) {
  const auto usec = std::chrono::duration_cast<std::chrono::microseconds>(timeout).count();
  return {static_cast<time_t>(usec / 1'000'000), static_cast<time_t>(usec % 1'000'000)};
}

}  // namespace

Url parse_url(std::string_view text) {
  auto bad = [&](const std::string& why) -> Url {
    fail(Errc::validation, "invalid URL '" + std::string(text) + "': " + why);
  };

  Url url;
  const auto scheme_end = text.find("://");
  if (scheme_end == std::string_view::npos) return bad("not an absolute URL");
  url.scheme = std::string(text.substr(0, scheme_end));
  std::transform(url.scheme.begin(), url.scheme.end(), url.scheme.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (url.scheme != "http" && url.scheme != "https") return bad("scheme must be http or https");

  std::string_view rest = text.substr(scheme_end + 3);
  const auto path_start = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, path_start);
  if (authority.find('@') != std::string_view::npos) return bad("credentials are not supported");
  url.port = url.scheme == "https" ? 443 : 80;

  std::string_view host = authority;
  if (!authority.empty() && authority.front() == '[') {
    const auto close = authority.find(']');
    if (close == std::string_view::npos) return bad("unterminated IPv6 literal");
    host = authority.substr(1, close - 1);
    authority.remove_prefix(close + 1);
    if (!authority.empty() && authority.front() != ':') return bad("junk after IPv6 literal");
  } else {
    const auto colon = authority.rfind(':');
    host = authority.substr(0, colon);
    authority = colon == std::string_view::npos ? std::string_view{} : authority.substr(colon);
  }
  if (!authority.empty()) {
    const std::string_view digits = authority.substr(1);
    int port = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size() ||
        port < 1 || port > 65535) {
      return bad("bad port");
    }
    url.port = port;
  }
  url.host = std::string(host);
  const bool ipv6 = url.host.find(':') != std::string::npos;
  if (ipv6 ? url.host.empty() : !valid_host(url.host)) return bad("bad host");

  std::string target =
      path_start == std::string_view::npos ? std::string("/") : std::string(rest.substr(path_start));
  if (const auto hash = target.find('#'); hash != std::string::npos) target.erase(hash);
  if (target.empty() || target.front() != '/') target.insert(target.begin(), '/');
  if (std::any_of(target.begin(), target.end(),
                  [](unsigned char c) { return c <= 0x20 || c == 0x7f; })) {
    return bad("unescaped whitespace or control character");
  }
  url.target = std::move(target);
  return url;
}

Seconds default_http_timeout() {
  if (const char* env = std::getenv("BOOSTLET_HTTP_TIMEOUT")) {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(value) && value > 0) return Seconds(value);
  }
  return kDefaultHttpTimeout;
}

HttpExchange send_http_post(std::string_view url_text, std::span<const std::uint8_t> body,
                            std::string_view content_type, Seconds timeout,
                            const HttpHeaders& headers, std::stop_token stop) {
  const Url url = parse_url(url_text);
  if (!(timeout.count() > 0) || !std::isfinite(timeout.count())) {
    fail(Errc::validation, "HTTP timeout must be positive");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (url.scheme == "https") {
    fail(Errc::validation, "https endpoints need a TLS-enabled build");
  }
#endif

  HttpExchange exchange;
  exchange.url = std::string(url_text);
  exchange.request_body.assign(body.begin(), body.end());
  exchange.request_content_type = std::string(content_type);
  exchange.timeout = timeout;

  const std::string host = url.host.find(':') != std::string::npos ? "[" + url.host + "]" : url.host;
  httplib::Client client(url.scheme + "://" + host + ":" + std::to_string(url.port));
  const auto [sec, usec] = to_sec_usec(timeout);
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);
  client.set_keep_alive(false);

  httplib::Headers request_headers;
  for (const auto& [key, value] : headers) request_headers.emplace(key, value);

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto deadline = start + std::chrono::duration_cast<Clock::duration>(timeout);
  bool deadline_hit = false;
  auto progress = [&](std::uint64_t, std::uint64_t) {
    if (stop.stop_requested()) return false;
    if (Clock::now() > deadline) {
      deadline_hit = true;
      return false;
    }
    return true;
  };

  auto result = client.Post(url.target, request_headers,
                            reinterpret_cast<const char*>(exchange.request_body.data()),
                            exchange.request_body.size(), exchange.request_content_type,
                            progress);
  exchange.elapsed = Clock::now() - start;

  if (!result) {
    const auto error = result.error();
    if (stop.stop_requested()) fail(Errc::cancelled, "HTTP request cancelled");
    // Socket-level timeouts surface as read/write errors; elapsed time tells them
    // apart from a peer that hung up early.
    const bool timed_out = deadline_hit || error == httplib::Error::ConnectionTimeout ||
                           ((error == httplib::Error::Read || error == httplib::Error::Write) &&
                            exchange.elapsed >= timeout * 0.95);
    if (timed_out) {
      fail(Errc::timeout, "POST " + exchange.url + " timed out after " +
                              std::to_string(timeout.count()) + " s");
    }
    fail(Errc::transport, "POST " + exchange.url + " failed: " + httplib::to_string(error));
  }

  exchange.status = result->status;
  exchange.response_body.assign(result->body.begin(), result->body.end());
  exchange.response_content_type = result->get_header_value("Content-Type");
  if (exchange.status < 200 || exchange.status > 299) {
    throw RemoteError(exchange.status, result->body);
  }
  return exchange;
}

}  // namespace boostlet
