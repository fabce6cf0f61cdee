#include "boostlet/error.hpp"

namespace boostlet {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::validation: return "validation";
    case Errc::decode: return "decode";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::no_surface: return "no-surface";
    case Errc::acquisition: return "acquisition";
    case Errc::commit: return "commit";
    case Errc::cancelled: return "cancelled";
    case Errc::registration: return "registration";
    case Errc::parse: return "parse";
    case Errc::remote: return "remote";
    case Errc::timeout: return "timeout";
    case Errc::transport: return "transport";
    case Errc::configuration: return "configuration";
    case Errc::io: return "io";
  }
  return "unknown";
}

RemoteError::RemoteError(int status, std::string body)
    : Error(Errc::remote, "remote endpoint answered HTTP " + std::to_string(status)),
      status_(status),
      body_(std::move(body)) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace boostlet
