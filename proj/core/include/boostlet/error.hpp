#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boostlet {

/// Failure categories shared by every engine layer. The CLI and the
/// regression harness map these onto exit codes and report reasons.
enum class Errc {
  validation,
  decode,
  unsupported_format,
  no_surface,
  acquisition,
  commit,
  cancelled,
  registration,
  parse,
  remote,
  timeout,
  transport,
  configuration,
  io,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Non-2xx answer from a remote processing endpoint.
class RemoteError : public Error {
 public:
  RemoteError(int status, std::string body);

  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }

 private:
  int status_;
  std::string body_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace boostlet
