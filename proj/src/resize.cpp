#include "histo/resize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace histo {

namespace {

// Catmull-Rom kernel, a = -0.5. w(0) = 1 and w(1) = w(2) = 0, so sampling at
// integer source positions reproduces the input exactly.
inline double cubic_weight(double x) {
    constexpr double a = -0.5;
    x = std::abs(x);
    if (x <= 1.0) return ((a + 2.0) * x - (a + 3.0)) * x * x + 1.0;
    if (x < 2.0) return ((a * x - 5.0 * a) * x + 8.0 * a) * x - 4.0 * a;
    return 0.0;
}

inline Index clamp_index(Index i, Index n) { return std::clamp<Index>(i, 0, n - 1); }

}  // namespace

RgbImage resize_bicubic(const RgbImage& img, Index out_w, Index out_h) {
    if (out_w < 1 || out_h < 1) throw std::invalid_argument("resize_bicubic: output dims must be >= 1");
    RgbImage out = make_rgb(out_h, out_w);
    const double sx = static_cast<double>(img.width) / static_cast<double>(out_w);
    const double sy = static_cast<double>(img.height) / static_cast<double>(out_h);

    for (Index oy = 0; oy < out_h; ++oy) {
        const double fy = (static_cast<double>(oy) + 0.5) * sy - 0.5;
        const Index iy = static_cast<Index>(std::floor(fy));
        const double ty = fy - static_cast<double>(iy);
        double wy[4];
        for (int k = 0; k < 4; ++k) wy[k] = cubic_weight(static_cast<double>(k - 1) - ty);

        for (Index ox = 0; ox < out_w; ++ox) {
            const double fx = (static_cast<double>(ox) + 0.5) * sx - 0.5;
            const Index ix = static_cast<Index>(std::floor(fx));
            const double tx = fx - static_cast<double>(ix);
            double wx[4];
            for (int k = 0; k < 4; ++k) wx[k] = cubic_weight(static_cast<double>(k - 1) - tx);

            double acc[3] = {0.0, 0.0, 0.0};
            for (int ky = 0; ky < 4; ++ky) {
                const Index sy_i = clamp_index(iy + ky - 1, img.height);
                for (int kx = 0; kx < 4; ++kx) {
                    const Index sx_i = clamp_index(ix + kx - 1, img.width);
                    const double w = wy[ky] * wx[kx];
                    for (int c = 0; c < 3; ++c) acc[c] += w * static_cast<double>(img.at(sy_i, sx_i, c));
                }
            }
            for (int c = 0; c < 3; ++c) {
                out.at(oy, ox, c) = static_cast<std::uint8_t>(std::clamp(std::round(acc[c]), 0.0, 255.0));
            }
        }
    }
    return out;
}

}  // namespace histo
