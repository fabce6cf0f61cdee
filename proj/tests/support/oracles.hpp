#pragma once

// Brute-force reference implementations. They work on raw sample vectors
// and share no code with the engine.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "boostlet/interaction.hpp"
#include "boostlet/pixel.hpp"

namespace boostlet::oracle {

inline std::uint8_t round_clamp(double v) {
  const double r = v >= 0 ? std::floor(v + 0.5) : -std::floor(-v + 0.5);
  if (r < 0) return 0;
  if (r > 255) return 255;
  return static_cast<std::uint8_t>(r);
}

inline PixelBuffer convolve(const PixelBuffer& in, int size, const std::vector<double>& w) {
  const int width = in.width();
  const int height = in.height();
  const int ch = in.channels();
  const int r = size / 2;
  const std::vector<std::uint8_t> src(in.data().begin(), in.data().end());
  std::vector<std::uint8_t> dst(src.size());
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      for (int c = 0; c < ch; ++c) {
        const std::size_t o = static_cast<std::size_t>((y * width + x) * ch + c);
        if (ch == 4 && c == 3) {
          dst[o] = src[o];
          continue;
        }
        double acc = 0.0;
        for (int j = 0; j < size; ++j) {
          for (int i = 0; i < size; ++i) {
            int sx = x + i - r;
            int sy = y + j - r;
            if (sx < 0) sx = 0;
            if (sx > width - 1) sx = width - 1;
            if (sy < 0) sy = 0;
            if (sy > height - 1) sy = height - 1;
            acc += w[static_cast<std::size_t>(j * size + i)] *
                   src[static_cast<std::size_t>((sy * width + sx) * ch + c)];
          }
        }
        dst[o] = round_clamp(acc);
      }
    }
  }
  return PixelBuffer(width, height, ch, std::move(dst));
}

inline std::array<std::uint64_t, 256> tally(const PixelBuffer& in) {
  std::array<std::uint64_t, 256> bins{};
  for (int v = 0; v < 256; ++v) {
    for (std::uint8_t s : in.data()) {
      if (s == v) ++bins[static_cast<std::size_t>(v)];
    }
  }
  return bins;
}

inline std::size_t count_differing(const PixelBuffer& a, const PixelBuffer& b, int tolerance) {
  std::size_t n = 0;
  for (int y = 0; y < a.height(); ++y) {
    for (int x = 0; x < a.width(); ++x) {
      bool differs = false;
      for (int c = 0; c < a.channels(); ++c) {
        differs = differs || std::abs(int(a.at(x, y, c)) - int(b.at(x, y, c))) > tolerance;
      }
      n += differs ? 1 : 0;
    }
  }
  return n;
}

inline PixelBuffer copy_region(const PixelBuffer& in, const Rect& roi) {
  PixelBuffer out(roi.w, roi.h, in.channels());
  for (int y = 0; y < roi.h; ++y) {
    for (int x = 0; x < roi.w; ++x) {
      for (int c = 0; c < in.channels(); ++c) out.at(x, y, c) = in.at(roi.x + x, roi.y + y, c);
    }
  }
  return out;
}

inline PixelBuffer composite(const PixelBuffer& image, const Mask& mask, Rgb color, double opacity) {
  PixelBuffer out = image;
  const double tint[3] = {double(color.r), double(color.g), double(color.b)};
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) {
      if (mask.at(x, y) != 255) continue;
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = round_clamp(opacity * tint[c] + (1.0 - opacity) * image.at(x, y, c));
      }
      out.at(x, y, 3) = 255;
    }
  }
  return out;
}

}  // namespace boostlet::oracle
