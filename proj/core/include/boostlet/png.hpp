#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "boostlet/pixel.hpp"

namespace boostlet {

inline constexpr std::array<std::uint8_t, 8> kPngSignature{0x89, 'P', 'N', 'G',
                                                           0x0D, 0x0A, 0x1A, 0x0A};

/// PNG bytes as exchanged with hosts, fixture corpora and remote services.
struct EncodedImage {
  std::vector<std::uint8_t> bytes;

  bool has_png_signature() const noexcept;
};

/// 8-bit grayscale for 1-channel buffers, 8-bit RGBA for 4-channel buffers.
EncodedImage encode_png(const PixelBuffer& input);

/// Gray sources decode to 1 channel; every other color type (RGB, indexed,
/// gray+alpha, RGBA) decodes to RGBA with opaque alpha where the source has
/// none. 16-bit sources are rejected with Errc::unsupported_format.
PixelBuffer decode_png(std::span<const std::uint8_t> bytes);
inline PixelBuffer decode_png(const EncodedImage& image) { return decode_png(image.bytes); }

PixelBuffer read_png(const std::filesystem::path& path);
/// Writes through a sibling temporary file and renames it into place, so
/// readers never observe a half-written image.
void write_png(const std::filesystem::path& path, const PixelBuffer& buffer);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace boostlet
