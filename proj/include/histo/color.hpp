#pragma once

#include "histo/image.hpp"

#include <array>

namespace histo {

/// Optical density per channel: OD = -log10((I + 1) / 256).
/// White (255) maps to exactly 0; black (0) maps to log10(256).
OdImage rgb_to_od(const RgbImage& img);

/// Inverse of rgb_to_od: I = clamp(round(256 * 10^(-OD) - 1), 0, 255).
RgbImage od_to_rgb(const OdImage& od);

/// RGB -> Ruderman lalphabeta via the fixed RGB->LMS matrix, log10 (LMS floored
/// at 1e-6), then the scaled opponent transform.
LalphabetaImage rgb_to_lalphabeta(const RgbImage& img);

/// Exact inverse of rgb_to_lalphabeta up to 8-bit quantization and clamping.
RgbImage lalphabeta_to_rgb(const LalphabetaImage& lab);

/// Default ImageNet mean RGB used before feeding images to a backbone.
inline constexpr std::array<double, 3> kImagenetMeanRgb = {123.68, 116.779, 103.939};

/// out[..., c] = in[..., c] - mean_rgb[c]; no scaling.
FloatImage subtract_mean(const RgbImage& img, const std::array<double, 3>& mean_rgb);

}  // namespace histo
