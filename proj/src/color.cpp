#include "histo/color.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace histo {

namespace {

// RGB -> LMS constants of the Reinhard transfer method.
const Eigen::Matrix3d& rgb_to_lms_matrix() {
    static const Eigen::Matrix3d m = (Eigen::Matrix3d() << 0.3811, 0.5783, 0.0402,
                                                           0.1967, 0.7244, 0.0782,
                                                           0.0241, 0.1288, 0.8444).finished();
    return m;
}

const Eigen::Matrix3d& lms_to_rgb_matrix() {
    static const Eigen::Matrix3d m = rgb_to_lms_matrix().inverse();
    return m;
}

// lab = diag(1/sqrt(3), 1/sqrt(6), 1/sqrt(2)) * B * log10(LMS), with
// B = ((1,1,1),(1,1,-2),(1,-1,0)). B has orthogonal rows, so the inverse of
// the combined map is B^T times the same diagonal.
const Eigen::Matrix3d& loglms_to_lab_matrix() {
    static const Eigen::Matrix3d m = [] {
        Eigen::Matrix3d b;
        b << 1, 1, 1,
             1, 1, -2,
             1, -1, 0;
        Eigen::Vector3d s(1.0 / std::sqrt(3.0), 1.0 / std::sqrt(6.0), 1.0 / std::sqrt(2.0));
        return Eigen::Matrix3d(s.asDiagonal() * b);
    }();
    return m;
}

const Eigen::Matrix3d& lab_to_loglms_matrix() {
    static const Eigen::Matrix3d m = [] {
        Eigen::Matrix3d b;
        b << 1, 1, 1,
             1, 1, -2,
             1, -1, 0;
        Eigen::Vector3d s(1.0 / std::sqrt(3.0), 1.0 / std::sqrt(6.0), 1.0 / std::sqrt(2.0));
        return Eigen::Matrix3d(b.transpose() * s.asDiagonal());
    }();
    return m;
}

constexpr double kLmsFloor = 1e-6;

inline std::uint8_t quantize8(double v) {
    double r = std::round(v);
    return static_cast<std::uint8_t>(std::clamp(r, 0.0, 255.0));
}

}  // namespace

OdImage rgb_to_od(const RgbImage& img) {
    OdImage od;
    od.height = img.height;
    od.width = img.width;
    od.channels = 3;
    od.data.resize(img.data.size());
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        od.data[i] = -std::log10((static_cast<double>(img.data[i]) + 1.0) / 256.0);
    }
    return od;
}

RgbImage od_to_rgb(const OdImage& od) {
    RgbImage img = make_rgb(od.height, od.width);
    for (std::size_t i = 0; i < od.data.size(); ++i) {
        img.data[i] = quantize8(256.0 * std::pow(10.0, -od.data[i]) - 1.0);
    }
    return img;
}

LalphabetaImage rgb_to_lalphabeta(const RgbImage& img) {
    LalphabetaImage lab;
    lab.height = img.height;
    lab.width = img.width;
    lab.channels = 3;
    lab.data.resize(img.data.size());
    const Eigen::Matrix3d& to_lms = rgb_to_lms_matrix();
    const Eigen::Matrix3d& to_lab = loglms_to_lab_matrix();
    const std::size_t n = img.data.size() / 3;
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Vector3d rgb(img.data[3 * i] / 255.0, img.data[3 * i + 1] / 255.0,
                            img.data[3 * i + 2] / 255.0);
        Eigen::Vector3d lms = (to_lms * rgb).cwiseMax(kLmsFloor);
        Eigen::Vector3d v = to_lab * lms.array().log10().matrix();
        lab.data[3 * i] = v[0];
        lab.data[3 * i + 1] = v[1];
        lab.data[3 * i + 2] = v[2];
    }
    return lab;
}

RgbImage lalphabeta_to_rgb(const LalphabetaImage& lab) {
    RgbImage img = make_rgb(lab.height, lab.width);
    const Eigen::Matrix3d& to_loglms = lab_to_loglms_matrix();
    const Eigen::Matrix3d& to_rgb = lms_to_rgb_matrix();
    const std::size_t n = lab.data.size() / 3;
    for (std::size_t i = 0; i < n; ++i) {
        Eigen::Vector3d v(lab.data[3 * i], lab.data[3 * i + 1], lab.data[3 * i + 2]);
        Eigen::Vector3d loglms = to_loglms * v;
        Eigen::Vector3d lms(std::pow(10.0, loglms[0]), std::pow(10.0, loglms[1]),
                            std::pow(10.0, loglms[2]));
        Eigen::Vector3d rgb = to_rgb * lms;
        img.data[3 * i] = quantize8(rgb[0] * 255.0);
        img.data[3 * i + 1] = quantize8(rgb[1] * 255.0);
        img.data[3 * i + 2] = quantize8(rgb[2] * 255.0);
    }
    return img;
}

FloatImage subtract_mean(const RgbImage& img, const std::array<double, 3>& mean_rgb) {
    FloatImage out(img.height, img.width, 3);
    for (std::size_t i = 0; i < img.data.size(); ++i) {
        out.data[i] = static_cast<double>(img.data[i]) - mean_rgb[i % 3];
    }
    return out;
}

}  // namespace histo
