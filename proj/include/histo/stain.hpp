#pragma once

#include "histo/image.hpp"

#include <Eigen/Core>

#include <filesystem>

namespace histo {

/// Fitted Macenko stain model: unit OD color directions for hematoxylin and
/// eosin (columns) plus robust per-stain concentration maxima.
struct StainProfile {
    Eigen::Matrix<double, 3, 2> stain_matrix;  // columns: hematoxylin, eosin
    Eigen::Vector2d max_concentrations;
};

/// Reinhard channel statistics in lalphabeta space.
struct ColorStats {
    Eigen::Vector3d mean;
    Eigen::Vector3d std;  // population std; floored at 1e-6 on use
};

inline constexpr double kMacenkoDefaultBeta = 0.15;
inline constexpr double kMacenkoDefaultAlpha = 1.0;

/// Macenko stain estimation: OD conversion, transparent-pixel rejection
/// (any channel <= beta), top-2 SVD plane of the retained OD cloud, robust
/// extreme directions at the alpha / (100 - alpha) angle percentiles,
/// nonnegative unit stain vectors ordered hematoxylin-first by red-channel
/// weight, and 99th-percentile concentration maxima.
///
/// Throws on degenerate images (per the message: "degenerate image" when too
/// few pixels exceed beta, "rank-deficient" when the OD cloud has no stable
/// two-dimensional plane).
StainProfile fit_macenko(const RgbImage& img, double beta = kMacenkoDefaultBeta,
                         double alpha = kMacenkoDefaultAlpha);

/// Normalizes img to the target profile: fits the source profile, solves
/// per-pixel nonnegative concentrations, rescales each stain by
/// target.max / source.max and reconstructs through the target stain matrix.
RgbImage apply_macenko(const RgbImage& img, const StainProfile& target,
                       double beta = kMacenkoDefaultBeta, double alpha = kMacenkoDefaultAlpha);

/// Per-channel mean and population std in lalphabeta space.
ColorStats fit_reinhard(const RgbImage& img);

/// Channel-wise moment transfer in lalphabeta space:
/// out = (in - src.mean) * target.std / max(src.std, 1e-6) + target.mean.
RgbImage apply_reinhard(const RgbImage& img, const ColorStats& target);

/// Key-value text serialization, 17-significant-digit reals (bit-stable
/// double round trip).
void save_stain_profile(const StainProfile& p, const std::filesystem::path& path);
StainProfile load_stain_profile(const std::filesystem::path& path);
void save_color_stats(const ColorStats& s, const std::filesystem::path& path);
ColorStats load_color_stats(const std::filesystem::path& path);

}  // namespace histo
