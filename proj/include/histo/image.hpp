#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace histo {

using Index = Eigen::Index;

/// Dense interleaved raster, row-major H x W x C.
template <typename Scalar>
struct Image {
    Index height = 0;
    Index width = 0;
    Index channels = 0;
    std::vector<Scalar> data;

    Image() = default;
    Image(Index h, Index w, Index c, Scalar fill = Scalar(0))
        : height(h), width(w), channels(c),
          data(static_cast<std::size_t>(h) * static_cast<std::size_t>(w) * static_cast<std::size_t>(c), fill) {
        if (h < 1 || w < 1 || c < 1) throw std::invalid_argument("Image: dims must be >= 1");
    }

    Index size() const { return height * width * channels; }

    Scalar& at(Index y, Index x, Index c) { return data[static_cast<std::size_t>((y * width + x) * channels + c)]; }
    Scalar at(Index y, Index x, Index c) const {
        return data[static_cast<std::size_t>((y * width + x) * channels + c)];
    }

    bool same_shape(const Image& o) const {
        return height == o.height && width == o.width && channels == o.channels;
    }
};

/// 8-bit RGB raster; channels is 3 by construction.
using RgbImage = Image<std::uint8_t>;

/// 64-bit raster used for optical density, lalphabeta and mean-subtracted tensors.
using FloatImage = Image<double>;

/// Optical-density raster (3 channels, values >= 0; 0 corresponds to intensity 255).
struct OdImage : FloatImage {};

/// Ruderman lalphabeta raster (3 channels).
struct LalphabetaImage : FloatImage {};

inline RgbImage make_rgb(Index h, Index w, std::uint8_t fill = 0) {
    RgbImage img;
    img.height = h;
    img.width = w;
    img.channels = 3;
    if (h < 1 || w < 1) throw std::invalid_argument("make_rgb: dims must be >= 1");
    img.data.assign(static_cast<std::size_t>(h) * static_cast<std::size_t>(w) * 3, fill);
    return img;
}

}  // namespace histo
