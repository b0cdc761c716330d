#pragma once

#include "histo/image.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace histo {

/// Decodes a PNG or TIFF byte stream into an 8-bit RGB raster. Grayscale
/// inputs are replicated to 3 channels; alpha is dropped. TIFF support covers
/// baseline 8-bit uncompressed and LZW streams (both byte orders, optional
/// horizontal predictor).
///
/// Throws std::runtime_error on: unsupported codec, truncated stream,
/// non-8-bit depth.
RgbImage decode_image(std::span<const std::byte> bytes);

/// Convenience wrapper: reads the file and decodes it.
RgbImage load_image(const std::filesystem::path& path);

/// Encodes the raster as an 8-bit RGB PNG.
std::vector<std::byte> encode_png(const RgbImage& img);

/// Writes the raster as a PNG file (write-temp-then-rename).
void save_png(const RgbImage& img, const std::filesystem::path& path);

}  // namespace histo
