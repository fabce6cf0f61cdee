#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace boostlet {

/// Rectangular 8-bit raster, 1 channel (gray) or 4 channels (R,G,B,A),
/// row-major with a top-left origin. Construction validates the layout, so
/// every live PixelBuffer satisfies `data().size() == width * height * channels`.
class PixelBuffer {
 public:
  /// Zero-filled buffer.
  PixelBuffer(int width, int height, int channels);
  PixelBuffer(int width, int height, int channels, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }

  std::uint8_t at(int x, int y, int c = 0) const noexcept {
    return data_[index(x, y, c)];
  }
  std::uint8_t& at(int x, int y, int c = 0) noexcept { return data_[index(x, y, c)]; }

  bool same_shape(const PixelBuffer& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  friend bool operator==(const PixelBuffer&, const PixelBuffer&) = default;

 private:
  std::size_t index(int x, int y, int c) const noexcept {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
            static_cast<std::size_t>(x)) * static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_;
  int height_;
  int channels_;
  std::vector<std::uint8_t> data_;
};

/// Odd-sided square convolution kernel, weights row-major.
class Kernel {
 public:
  Kernel(int size, std::vector<double> weights);

  static Kernel identity(int size = 3);
  /// Horizontal-gradient Sobel kernel: -1 0 1 / -2 0 2 / -1 0 1.
  static Kernel sobel_x();

  int size() const noexcept { return size_; }
  int radius() const noexcept { return size_ / 2; }
  std::span<const double> weights() const noexcept { return weights_; }
  double weight(int col, int row) const noexcept {
    return weights_[static_cast<std::size_t>(row * size_ + col)];
  }

  friend bool operator==(const Kernel&, const Kernel&) = default;

 private:
  int size_;
  std::vector<double> weights_;
};

/// Per-pixel coverage, 0 = outside, 255 = inside. Intermediate values are
/// allowed until the mask is hardened.
class Mask {
 public:
  Mask(int width, int height);
  Mask(int width, int height, std::vector<std::uint8_t> data);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::span<const std::uint8_t> data() const noexcept { return data_; }
  std::span<std::uint8_t> data() noexcept { return data_; }
  std::uint8_t at(int x, int y) const noexcept {
    return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                 static_cast<std::size_t>(x)];
  }

  /// True when every value is 0 or 255.
  bool hardened() const noexcept;

  friend bool operator==(const Mask&, const Mask&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

using Histogram = std::array<std::uint64_t, 256>;

inline constexpr std::uint8_t kDefaultMaskThreshold = 128;

// Convolution with clamp-to-edge sampling. Gray buffers convolve the single
// channel; RGBA buffers convolve R, G and B independently and copy alpha.
// Each sum is rounded half away from zero, then clamped to [0, 255].
PixelBuffer filter(const PixelBuffer& input, const Kernel& kernel);

PixelBuffer grayscale_to_rgba(const PixelBuffer& input);

/// Rec. 709 luma; alpha is ignored.
PixelBuffer rgba_to_grayscale(const PixelBuffer& input);

/// v >= threshold -> 255, else 0.
Mask harden_mask(const Mask& mask, std::uint8_t threshold = kDefaultMaskThreshold);

/// Reinterprets a gray buffer as a mask of the same dimensions.
Mask mask_from_gray(const PixelBuffer& gray);

/// Blends `color` over every pixel where the hardened mask is 255; those
/// pixels become opaque. Pixels outside the mask are untouched.
PixelBuffer apply_mask(const PixelBuffer& image, const Mask& mask, Rgb color,
                       double opacity);

Histogram compute_histogram(const PixelBuffer& input);

/// 255 - v on color samples; alpha is kept.
PixelBuffer invert(const PixelBuffer& input);

}  // namespace boostlet
