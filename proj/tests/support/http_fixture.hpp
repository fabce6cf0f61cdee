#pragma once

#include <arpa/inet.h>
#include <httplib.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <functional>
#include <mutex>
#include <string>
#include <thread>

#include "boostlet/png.hpp"

namespace boostlet::testing {

/// Loopback HTTP server standing in for remote inference endpoints.
///   /echo         body and content type sent back unchanged
///   /status/500   HTTP 500
///   /slow         answers after one second
///   /invert       decodes the PNG body and returns the inverted PNG
///   /mask-left    raw mask bytes, left half 200 and right half 0
///   /mask-png     gray PNG mask, top row 255
///   /headers      echoes the X-Boostlet-Box and X-Boostlet-Seeds headers
///   /tiny         a 1x1 PNG regardless of input
class HttpFixture {
 public:
  using Observer = std::function<void(const std::string& box, const std::string& seeds)>;

  HttpFixture() {
    server_.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response&) {
      std::lock_guard lock(mutex_);
      if (observer_) {
        observer_(req.get_header_value("X-Boostlet-Box"), req.get_header_value("X-Boostlet-Seeds"));
      }
      return httplib::Server::HandlerResponse::Unhandled;
    });
    server_.Post("/echo", [](const httplib::Request& req, httplib::Response& res) {
      res.set_content(req.body, req.get_header_value("Content-Type"));
    });
    server_.Post("/status/500", [](const httplib::Request&, httplib::Response& res) {
      res.status = 500;
      res.set_content("model exploded", "text/plain");
    });
    server_.Post("/slow", [](const httplib::Request& req, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::seconds(1));
      res.set_content(req.body, "application/octet-stream");
    });
    server_.Post("/invert", [](const httplib::Request& req, httplib::Response& res) {
      const std::vector<std::uint8_t> bytes(req.body.begin(), req.body.end());
      const auto out = encode_png(invert(decode_png(bytes)));
      res.set_content(std::string(out.bytes.begin(), out.bytes.end()), "image/png");
    });
    server_.Post("/mask-left", [](const httplib::Request& req, httplib::Response& res) {
      const std::vector<std::uint8_t> bytes(req.body.begin(), req.body.end());
      const PixelBuffer in = decode_png(bytes);
      std::string mask(in.pixel_count(), '\0');
      for (int y = 0; y < in.height(); ++y) {
        for (int x = 0; x < in.width() / 2; ++x) {
          mask[static_cast<std::size_t>(y * in.width() + x)] = static_cast<char>(200);
        }
      }
      res.set_content(mask, "application/octet-stream");
    });
    server_.Post("/mask-png", [](const httplib::Request& req, httplib::Response& res) {
      const std::vector<std::uint8_t> bytes(req.body.begin(), req.body.end());
      const PixelBuffer in = decode_png(bytes);
      PixelBuffer mask(in.width(), in.height(), 1);
      for (int x = 0; x < in.width(); ++x) mask.at(x, 0) = 255;
      const auto out = encode_png(mask);
      res.set_content(std::string(out.bytes.begin(), out.bytes.end()), "image/png");
    });
    server_.Post("/headers", [](const httplib::Request& req, httplib::Response& res) {
      res.set_content(req.get_header_value("X-Boostlet-Box") + "|" +
                          req.get_header_value("X-Boostlet-Seeds"),
                      "text/plain");
    });
    server_.Post("/tiny", [](const httplib::Request&, httplib::Response& res) {
      const auto out = encode_png(PixelBuffer(1, 1, 4));
      res.set_content(std::string(out.bytes.begin(), out.bytes.end()), "image/png");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  ~HttpFixture() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }

  HttpFixture(const HttpFixture&) = delete;
  HttpFixture& operator=(const HttpFixture&) = delete;

  /// Sees the interaction headers of every request before it is routed.
  void on_request(Observer observer) {
    std::lock_guard lock(mutex_);
    observer_ = std::move(observer);
  }

  int port() const noexcept { return port_; }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port_) + path;
  }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mutex_;
  Observer observer_;
};

/// A port on which nothing listens: bound once, then released.
inline int closed_port() {
  const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = 0;
  ::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr);
  socklen_t len = sizeof addr;
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  ::close(fd);
  return ntohs(addr.sin_port);
}

}  // namespace boostlet::testing
