#include <png.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <system_error>

#include "boostlet/error.hpp"
#include "boostlet/png.hpp"

namespace boostlet {
namespace {

// png_image owns decoder state between begin_read and finish_read.
struct ImageGuard {
  png_image image{};
  ImageGuard() {
    image.version = PNG_IMAGE_VERSION;
  }
  ~ImageGuard() { png_image_free(&image); }
  ImageGuard(const ImageGuard&) = delete;
  ImageGuard& operator=(const ImageGuard&) = delete;
};

std::string libpng_message(const png_image& image) {
  return image.message[0] != '\0' ? std::string(image.message) : std::string("unknown error");
}

}  // namespace

bool EncodedImage::has_png_signature() const noexcept {
  return bytes.size() >= kPngSignature.size() &&
         std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin());
}

EncodedImage encode_png(const PixelBuffer& input) {
  ImageGuard guard;
  png_image& image = guard.image;
  image.width = static_cast<png_uint_32>(input.width());
  image.height = static_cast<png_uint_32>(input.height());
  image.format = input.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGBA;

  const auto row_stride = static_cast<png_int_32>(input.width() * input.channels());
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, input.data().data(), row_stride,
                                 nullptr)) {
    fail(Errc::validation, "png encode: " + libpng_message(image));
  }
  EncodedImage out;
  out.bytes.resize(size);
  if (!png_image_write_to_memory(&image, out.bytes.data(), &size, 0, input.data().data(),
                                 row_stride, nullptr)) {
    fail(Errc::validation, "png encode: " + libpng_message(image));
  }
  out.bytes.resize(size);
  return out;
}

PixelBuffer decode_png(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kPngSignature.size() ||
      !std::equal(kPngSignature.begin(), kPngSignature.end(), bytes.begin())) {
    fail(Errc::decode, "png decode: missing PNG signature");
  }

  ImageGuard guard;
  png_image& image = guard.image;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    fail(Errc::decode, "png decode: " + libpng_message(image));
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    fail(Errc::unsupported_format, "png decode: 16-bit images are not supported");
  }
  if (image.width > static_cast<png_uint_32>(1 << 16) ||
      image.height > static_cast<png_uint_32>(1 << 16)) {
    fail(Errc::unsupported_format, "png decode: image dimensions exceed 65536");
  }

  const bool gray = (image.format & (PNG_FORMAT_FLAG_COLOR | PNG_FORMAT_FLAG_ALPHA |
                                     PNG_FORMAT_FLAG_COLORMAP)) == 0;
  const int channels = gray ? 1 : 4;
  image.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGBA;

  PixelBuffer out(static_cast<int>(image.width), static_cast<int>(image.height), channels);
  const auto row_stride = static_cast<png_int_32>(out.width() * channels);
  if (!png_image_finish_read(&image, nullptr, out.data().data(), row_stride, nullptr)) {
    fail(Errc::decode, "png decode: " + libpng_message(image));
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  if (in.bad()) fail(Errc::io, "error reading " + path.string());
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  auto temp = path;
  temp += ".partial";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) fail(Errc::io, "cannot open " + temp.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) fail(Errc::io, "error writing " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    fail(Errc::io, "cannot replace " + path.string());
  }
}

PixelBuffer read_png(const std::filesystem::path& path) {
  return decode_png(read_file(path));
}

void write_png(const std::filesystem::path& path, const PixelBuffer& buffer) {
  write_file_atomic(path, encode_png(buffer).bytes);
}

}  // namespace boostlet
