#include "boostlet/pixel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boostlet/error.hpp"

namespace boostlet {
namespace {

// Keeps width * height * channels comfortably inside size_t and int math.
constexpr long long kMaxSamples = 1LL << 31;

void check_dimensions(int width, int height, const char* what) {
  if (width < 1 || height < 1) {
    fail(Errc::validation, std::string(what) + " dimensions must be positive, got " +
                               std::to_string(width) + "x" + std::to_string(height));
  }
  if (static_cast<long long>(width) * height * 4 > kMaxSamples) {
    fail(Errc::validation, std::string(what) + " is too large");
  }
}

std::uint8_t to_byte(double value) {
  const double rounded = std::round(value);
  return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
}

void require_channels(const PixelBuffer& buffer, int channels, const char* op) {
  if (buffer.channels() != channels) {
    fail(Errc::validation, std::string(op) + " expects a " + std::to_string(channels) +
                               "-channel buffer, got " + std::to_string(buffer.channels()));
  }
}

}  // namespace

PixelBuffer::PixelBuffer(int width, int height, int channels)
    : width_(width), height_(height), channels_(channels) {
  check_dimensions(width, height, "pixel buffer");
  if (channels != 1 && channels != 4) {
    fail(Errc::validation, "pixel buffer must have 1 or 4 channels, got " +
                               std::to_string(channels));
  }
  data_.assign(pixel_count() * static_cast<std::size_t>(channels), 0);
}

PixelBuffer::PixelBuffer(int width, int height, int channels,
                         std::vector<std::uint8_t> data)
    : PixelBuffer(width, height, channels) {
  if (data.size() != data_.size()) {
    fail(Errc::validation, "pixel buffer holds " + std::to_string(data.size()) +
                               " bytes, expected " + std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

Kernel::Kernel(int size, std::vector<double> weights)
    : size_(size), weights_(std::move(weights)) {
  if (size < 1 || size % 2 == 0) {
    fail(Errc::validation, "kernel size must be odd and positive, got " +
                               std::to_string(size));
  }
  if (weights_.size() != static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {
    fail(Errc::validation, "kernel of size " + std::to_string(size) + " needs " +
                               std::to_string(size * size) + " weights, got " +
                               std::to_string(weights_.size()));
  }
  for (double w : weights_) {
    if (!std::isfinite(w)) fail(Errc::validation, "kernel weights must be finite");
  }
}

Kernel Kernel::identity(int size) {
  std::vector<double> weights(static_cast<std::size_t>(size) * static_cast<std::size_t>(size),
                              0.0);
  if (!weights.empty()) weights[weights.size() / 2] = 1.0;
  return Kernel(size, std::move(weights));
}

Kernel Kernel::sobel_x() {
  return Kernel(3, {-1, 0, 1,
                    -2, 0, 2,
                    -1, 0, 1});
}

Mask::Mask(int width, int height) : width_(width), height_(height) {
  check_dimensions(width, height, "mask");
  data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), 0);
}

Mask::Mask(int width, int height, std::vector<std::uint8_t> data) : Mask(width, height) {
  if (data.size() != data_.size()) {
    fail(Errc::validation, "mask holds " + std::to_string(data.size()) +
                               " bytes, expected " + std::to_string(data_.size()));
  }
  data_ = std::move(data);
}

bool Mask::hardened() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](std::uint8_t v) { return v == 0 || v == 255; });
}

PixelBuffer filter(const PixelBuffer& input, const Kernel& kernel) {
  const int width = input.width();
  const int height = input.height();
  const int channels = input.channels();
  const int size = kernel.size();
  const int radius = kernel.radius();
  const int color_channels = channels == 4 ? 3 : 1;

  // Clamped source column for every (x, kernel column) pair.
  std::vector<int> columns(static_cast<std::size_t>(width) * static_cast<std::size_t>(size));
  for (int x = 0; x < width; ++x) {
    for (int i = 0; i < size; ++i) {
      columns[static_cast<std::size_t>(x * size + i)] =
          std::clamp(x + i - radius, 0, width - 1);
    }
  }

  PixelBuffer output(width, height, channels);
  const auto weights = kernel.weights();
  std::vector<int> rows(static_cast<std::size_t>(size));
  for (int y = 0; y < height; ++y) {
    for (int j = 0; j < size; ++j) {
      rows[static_cast<std::size_t>(j)] = std::clamp(y + j - radius, 0, height - 1);
    }
    for (int x = 0; x < width; ++x) {
      const int* cols = &columns[static_cast<std::size_t>(x * size)];
      for (int c = 0; c < color_channels; ++c) {
        double sum = 0.0;
        for (int j = 0; j < size; ++j) {
          const int sy = rows[static_cast<std::size_t>(j)];
          const double* w = &weights[static_cast<std::size_t>(j * size)];
          for (int i = 0; i < size; ++i) {
            sum += w[i] * input.at(cols[i], sy, c);
          }
        }
        output.at(x, y, c) = to_byte(sum);
      }
      if (channels == 4) output.at(x, y, 3) = input.at(x, y, 3);
    }
  }
  return output;
}

PixelBuffer grayscale_to_rgba(const PixelBuffer& input) {
  require_channels(input, 1, "grayscale_to_rgba");
  PixelBuffer output(input.width(), input.height(), 4);
  auto src = input.data();
  auto dst = output.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[4 * i + 0] = src[i];
    dst[4 * i + 1] = src[i];
    dst[4 * i + 2] = src[i];
    dst[4 * i + 3] = 255;
  }
  return output;
}

PixelBuffer rgba_to_grayscale(const PixelBuffer& input) {
  require_channels(input, 4, "rgba_to_grayscale");
  PixelBuffer output(input.width(), input.height(), 1);
  auto src = input.data();
  auto dst = output.data();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = to_byte(0.2126 * src[4 * i] + 0.7152 * src[4 * i + 1] +
                     0.0722 * src[4 * i + 2]);
  }
  return output;
}

Mask harden_mask(const Mask& mask, std::uint8_t threshold) {
  Mask output(mask.width(), mask.height());
  std::transform(mask.data().begin(), mask.data().end(), output.data().begin(),
                 [threshold](std::uint8_t v) -> std::uint8_t {
                   return v >= threshold ? 255 : 0;
                 });
  return output;
}

Mask mask_from_gray(const PixelBuffer& gray) {
  require_channels(gray, 1, "mask_from_gray");
  auto data = gray.data();
  return Mask(gray.width(), gray.height(), {data.begin(), data.end()});
}

PixelBuffer apply_mask(const PixelBuffer& image, const Mask& mask, Rgb color,
                       double opacity) {
  require_channels(image, 4, "apply_mask");
  if (mask.width() != image.width() || mask.height() != image.height()) {
    fail(Errc::validation, "mask is " + std::to_string(mask.width()) + "x" +
                               std::to_string(mask.height()) + " but image is " +
                               std::to_string(image.width()) + "x" +
                               std::to_string(image.height()));
  }
  if (!mask.hardened()) fail(Errc::validation, "apply_mask requires a hardened mask");
  if (!(opacity >= 0.0 && opacity <= 1.0)) {
    fail(Errc::validation, "mask opacity must lie in [0, 1]");
  }

  PixelBuffer output = image;
  const std::array<double, 3> tint{static_cast<double>(color.r),
                                   static_cast<double>(color.g),
                                   static_cast<double>(color.b)};
  auto m = mask.data();
  auto px = output.data();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    for (std::size_t c = 0; c < 3; ++c) {
      px[4 * i + c] = to_byte(opacity * tint[c] + (1.0 - opacity) * px[4 * i + c]);
    }
    px[4 * i + 3] = 255;
  }
  return output;
}

Histogram compute_histogram(const PixelBuffer& input) {
  require_channels(input, 1, "compute_histogram");
  Histogram bins{};
  for (std::uint8_t v : input.data()) ++bins[v];
  return bins;
}

PixelBuffer invert(const PixelBuffer& input) {
  PixelBuffer output = input;
  auto px = output.data();
  const std::size_t stride = static_cast<std::size_t>(input.channels());
  for (std::size_t i = 0; i < px.size(); i += stride) {
    const std::size_t color = stride == 4 ? 3 : 1;
    for (std::size_t c = 0; c < color; ++c) px[i + c] = static_cast<std::uint8_t>(255 - px[i + c]);
  }
  return output;
}

}  // namespace boostlet
