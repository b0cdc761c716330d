#pragma once

#include "histo/image.hpp"

namespace histo {

/// Catmull-Rom bicubic resize (a = -0.5), edge-clamped sampling. Output values
/// are rounded half-away-from-zero and clamped to [0, 255]. Resizing to the
/// input dimensions is pixel-identical.
RgbImage resize_bicubic(const RgbImage& img, Index out_w, Index out_h);

}  // namespace histo
